from dataclasses import dataclass
from typing import Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field

from ..utils.serialize import columns_to_records

Scheme = Literal["leapfrog2", "leapfrog4"]


class TauState(BaseModel):
    """内禀时间 tau 上的一个状态, t 视为冻结"""
    model_config = ConfigDict(frozen=True)

    tau: float
    ell: float
    v_i: float = Field(..., description="内禀速度 v_i = dx/dtau, dell/dtau = -v_i")
    E_Q: float


class HarmonicSpec(BaseModel):
    """谐振运动 ell = -A sin(omega tau), v_i = A omega cos(omega tau)"""
    model_config = ConfigDict(frozen=True)

    A: float
    omega: float
    f: Optional[float] = Field(None, description="复现该运动所需的形状常数")

    @computed_field
    @property
    def v_max(self) -> float:
        return self.A * self.omega

    @property
    def period(self) -> float:
        return 2.0 * np.pi / self.omega


class TurningPoint(BaseModel):
    x_turn: float = Field(..., description="R_turn / R_M = 1/sqrt(1 + v_i0²/(2 f c²))")
    R_turn: float
    ell_turn: float


class UncertaintyProducts(BaseModel):
    dx_dp: float
    dE_dt: float
    gamma_o: float
    gamma_s: float
    A: float
    omega: float


@dataclass(frozen=True)
class TauTrajectory:
    """
    tau 积分的结果, 各列等长。

    drift 列是逐点的 |E_Q(tau) - E_Q(0)| / E_Q(0), energy_drift 是它的最大值。
    """
    tau: np.ndarray
    ell: np.ndarray
    v_i: np.ndarray
    V_Q: np.ndarray
    E_Q: np.ndarray
    drift: np.ndarray
    period_estimate: float
    period_first: float
    period_last: float
    energy_drift: float
    dtau: float
    scheme: Scheme
    v_i0: float

    def __len__(self) -> int:
        return int(self.tau.size)

    @property
    def n_steps(self) -> int:
        return len(self) - 1

    @property
    def ell_turn(self) -> float:
        return float(np.max(np.abs(self.ell)))

    @property
    def states(self) -> List[TauState]:
        return [TauState(tau=float(a), ell=float(b), v_i=float(c), E_Q=float(d))
                for a, b, c, d in zip(self.tau, self.ell, self.v_i, self.E_Q)]

    def columns(self) -> Dict[str, np.ndarray]:
        return {"tau": self.tau, "ell": self.ell, "v_i": self.v_i, "V_Q": self.V_Q,
                "E_Q": self.E_Q, "drift": self.drift}

    def records(self) -> List[Dict[str, float]]:
        return columns_to_records(self.columns())

    def summary(self) -> Dict[str, float | int | str]:
        return {
            "period_estimate": self.period_estimate,
            "period_first": self.period_first,
            "period_last": self.period_last,
            "energy_drift": self.energy_drift,
            "ell_turn": self.ell_turn,
            "dtau": self.dtau,
            "scheme": self.scheme,
            "n_steps": self.n_steps,
            "v_i0": self.v_i0,
        }
