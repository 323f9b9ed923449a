from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np
from pydantic import BaseModel, Field

from ..utils.serialize import columns_to_records


class FieldSample(BaseModel):
    ell: float
    R: float
    Rdot: float
    Rddot: float
    beta: float = Field(..., description="beta = 1 - lambda_r² Rddot / R")
    V_Q: float
    H: float
    S_phase_rate: Tuple[float, float] = Field(..., description="(dS/dx, -dS/dt) = (p_o, H)")


@dataclass(frozen=True)
class FieldColumns:
    """与剖面网格同位置的场量列"""
    ell: np.ndarray
    R: np.ndarray
    Rdot: np.ndarray
    Rddot: np.ndarray
    beta: np.ndarray
    V_Q: np.ndarray
    H: np.ndarray
    p_o: float

    def __len__(self) -> int:
        return int(self.ell.size)

    def sample(self, index: int) -> FieldSample:
        return FieldSample(
            ell=float(self.ell[index]), R=float(self.R[index]), Rdot=float(self.Rdot[index]),
            Rddot=float(self.Rddot[index]), beta=float(self.beta[index]), V_Q=float(self.V_Q[index]),
            H=float(self.H[index]), S_phase_rate=(self.p_o, float(self.H[index])),
        )

    def columns(self) -> Dict[str, np.ndarray]:
        return {"ell": self.ell, "R": self.R, "V_Q": self.V_Q, "H": self.H, "beta": self.beta}

    def records(self) -> List[Dict[str, float]]:
        return columns_to_records(self.columns())


class EnergyBudget(BaseModel):
    """自由粒子 (外势 V 为常数) 的能量账目"""
    v_i0: float
    V: float = Field(0.0, description="常数外势, 只计入 E_NQ")
    E_Q: float = Field(..., description="纯量子总能量 V_Qm + m gamma_o v_i0² / 2")
    E_NQ: float = Field(..., description="非量子总能量 m gamma_o c² + V")
    V_Qm: float
    V_QM: float
    H_min: float
    H_max: float
    E_full: float

    @property
    def H_amplitude(self) -> float:
        return self.H_max - self.H_min


class ResidualReport(BaseModel):
    """
    Klein-Gordon 拆分方程在网格上的残差。

    (a) 实部的第一积分 (1 + c1/R²) - sqrt(beta);
    (b) 虚部化出的常微分方程 Rdot/R - beta_dot / (4 (sqrt(beta) - beta));
    (c) 导数列与 ell 采样的一致性, 逐区间给出 (共 n_samples - 1 个)。
    逐点残差不进入 JSON。
    """
    n_samples: int
    max_residual_a: float
    max_residual_b: float
    max_residual_c: float = Field(..., description="导数列沿 ell 积分回 R 与 Rdot 的相对误差")
    mean_residual_a: float
    mean_residual_b: float
    mean_residual_c: float
    max_guidance_residual: float = Field(..., description="max |hbar Im(grad psi / psi) - p_o|")
    threshold: float
    certified: bool
    residual_a: List[float] = Field(default_factory=list, exclude=True)
    residual_b: List[float] = Field(default_factory=list, exclude=True)
    residual_c: List[float] = Field(default_factory=list, exclude=True)
