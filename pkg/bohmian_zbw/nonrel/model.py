import math
from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field

from ..profile.model import ArrayLike

ProfileKind = Literal["cosine", "exponential"]


class NonRelProfile(BaseModel):
    """
    非相对论 Bohm 自由粒子的定态振幅, 以 ell = x - v t 为变量。

    cosine: R = |A cos(sqrt(k) ell)|, 有界但不可归一化;
    exponential: R = A e^{sqrt(k) ell} + B e^{-sqrt(k) ell}, 发散, 永远不被接受。
    """
    model_config = ConfigDict(frozen=True)

    kind: ProfileKind
    k: float = Field(..., description="波数平方尺度, |V_Q| = hbar² k / (2m)")
    A: float = 1.0
    B: float = 0.0
    v: float = Field(0.5, description="粒子速度")
    m: float = 1.0
    hbar: float = 1.0

    @computed_field
    @property
    def divergent(self) -> bool:
        return self.kind == "exponential"

    @property
    def accepted(self) -> bool:
        return not self.divergent

    @property
    def wavenumber(self) -> float:
        return math.sqrt(self.k)

    @property
    def V_Q(self) -> float:
        """cosine 时为 +hbar² k / (2m), exponential 时为 -hbar² k / (2m)"""
        magnitude = self.hbar ** 2 * self.k / (2.0 * self.m)
        return magnitude if self.kind == "cosine" else -magnitude

    @property
    def momentum(self) -> float:
        return self.m * self.v

    @property
    def ell_star(self) -> Optional[float]:
        """exponential 剖面的极小点, 在它两侧 R 单调增长; 单一指数时没有极小点"""
        if self.kind != "exponential" or self.A <= 0.0 or self.B <= 0.0:
            return None
        return math.log(self.B / self.A) / (2.0 * self.wavenumber)

    def amplitude(self, x: ArrayLike, t: ArrayLike = 0.0) -> ArrayLike:
        s = self.wavenumber * (np.asarray(x, dtype=float) - self.v * np.asarray(t, dtype=float))
        if self.kind == "cosine":
            value = np.abs(self.A * np.cos(s))
        else:
            value = self.A * np.exp(s) + self.B * np.exp(-s)
        return float(value) if np.ndim(value) == 0 else value


class NonRelResidualReport(BaseModel):
    kind: ProfileKind
    n_points: int
    n_excluded: int = Field(..., description="距 cosine 零点过近而被剔除的采样点数")
    fd_step: float
    V_Q_expected: float
    V_Q_mean: float
    V_Q_std: float
    max_V_Q_deviation: float
    hj_residual: float = Field(..., description="max |dS/dt + (dS/dx)²/2m + V_Q|")
    continuity_residual: float
    threshold: float
    passed: bool


class LimitVerdict(BaseModel):
    """非相对论极限的适用性"""
    f: float
    curvature: float = Field(..., description="|lambda_r² Rddot / R| 在原点处, 等于 f(f+2)")
    V_QM_ratio: float = Field(..., description="V_QM / (m gamma_o c²) = f + 1/2")
    threshold: float
    valid: bool
    verdict: str
    H_exact: float = Field(..., description="m gamma_o c² sqrt(beta) 在原点处")
    H_linearized: float = Field(..., description="把 sqrt(beta) 展开到一阶")
    H_nonrel: float = Field(..., description="m c² + m v_o² / 2 + Bohm 量子势")


class MassRow(BaseModel):
    m: float
    forced_H: float
    rest_energy: float
    g1: float
    g2: float
    g3: float
    g4: float
    hbar_sum: float
    total: float


class NoGoReport(BaseModel):
    gamma: float
    rows: List[MassRow]
    decade_ratios: List[float] = Field(..., description="相邻质量间 hbar 项之和的比值")
    rest_energy_forced: bool
    crosses_zero: bool
    g4_constant: bool
    confirmed: bool
