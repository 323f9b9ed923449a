from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator
from scipy.interpolate import PchipInterpolator

from ..errors import DomainError
from ..kinematics import PhysicalParams

ArrayLike = Union[float, np.ndarray]


class ProfileParams(BaseModel):
    """剖面 R(ell) 的定义常数, c1 = f R_M² 由 f 与 R_M 精确给出"""
    model_config = ConfigDict(frozen=True)

    f: float = Field(..., description="无量纲形状常数 f = c1 / R_M²")
    R_M: float = Field(1.0, description="剖面峰值 R(0)")
    lambda_r: float = Field(1.0, description="约化 Compton 长度")

    @field_validator("f", "R_M", "lambda_r")
    @classmethod
    def validate_positive(cls, value: float) -> float:
        if not value > 0.0:
            raise ValueError("f, R_M and lambda_r must be positive")
        return value

    @computed_field
    @property
    def c1(self) -> float:
        return self.f * self.R_M ** 2

    @classmethod
    def from_physics(cls, f: float, phys: PhysicalParams, R_M: float = 1.0) -> "ProfileParams":
        return cls(f=f, R_M=R_M, lambda_r=phys.lambda_r)

    def with_amplitude(self, R_M: float) -> "ProfileParams":
        return ProfileParams(f=self.f, R_M=R_M, lambda_r=self.lambda_r)


class ProfileExtremes(BaseModel):
    """剖面的极值信息"""
    r_m_ratio: float = Field(..., description="R_m / R_M = 1/sqrt(1 + 1/(2f))")
    ell_m: float = Field(..., description="由剖面积分得到的 R = R_m 处的 ell")
    ell_m_quadratic: float = Field(..., description="小 ell 二次近似给出的估计")
    printed_radicand: float = Field(..., description="f(1 - 1/sqrt(1 - 1/(2f))), 可能为负或 nan")


def _freeze(array: np.ndarray) -> np.ndarray:
    array = np.ascontiguousarray(array, dtype=float)
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class ProfileGrid:
    """
    偶函数剖面 R(ell) 在 ell >= 0 上的采样, 附带同位置的各阶导数。

    ell < 0 通过偶延拓得到; 插值使用单调三次 (PCHIP), 不会产生虚假振荡。
    构造后不可变, 可并发读取。
    """
    ell: np.ndarray
    R: np.ndarray
    Rdot: np.ndarray
    Rddot: np.ndarray
    Rdddot: np.ndarray
    params: ProfileParams
    r_floor: float
    u: Optional[np.ndarray] = None
    error_estimate: float = 0.0
    c3_convention: str = "ell(R_M) = 0"
    _interp: PchipInterpolator = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        for name in ("ell", "R", "Rdot", "Rddot", "Rdddot"):
            object.__setattr__(self, name, _freeze(getattr(self, name)))
        if self.u is not None:
            object.__setattr__(self, "u", _freeze(self.u))

        n = self.ell.size
        if n < 2 or any(getattr(self, name).size != n for name in ("R", "Rdot", "Rddot", "Rdddot")):
            raise DomainError("profile columns must share a length of at least 2")
        if self.ell[0] != 0.0:
            raise DomainError("profile grid must start at ell = 0")
        if np.any(np.diff(self.ell) <= 0.0):
            raise DomainError("ell samples must be strictly increasing")
        if np.any(np.diff(self.R) >= 0.0):
            raise DomainError("R must be strictly decreasing along increasing ell")
        if np.any(self.R <= 0.0):
            raise DomainError("R must stay positive on the grid")
        object.__setattr__(self, "_interp", PchipInterpolator(self.ell, self.R, extrapolate=False))

    @property
    def size(self) -> int:
        return int(self.ell.size)

    @property
    def ell_max(self) -> float:
        return float(self.ell[-1])

    def contains(self, ell: ArrayLike) -> bool:
        return bool(np.all(np.abs(ell) <= self.ell_max * (1.0 + 1e-12)))

    def amplitude(self, ell: ArrayLike) -> ArrayLike:
        """R(ell), ell < 0 按偶对称反射"""
        a = np.abs(np.asarray(ell, dtype=float))
        if not self.contains(a):
            raise DomainError(f"ell outside profile grid [-{self.ell_max:.6g}, {self.ell_max:.6g}]")
        values = self._interp(np.minimum(a, self.ell_max))
        return float(values) if values.ndim == 0 else values

    def scaled(self, factor: float) -> "ProfileGrid":
        """把所有采样列乘以 factor, 剖面常数保持不变 (用于扰动检验)"""
        if not factor > 0.0:
            raise DomainError("scale factor must be positive")
        return ProfileGrid(
            ell=self.ell, R=self.R * factor, Rdot=self.Rdot * factor, Rddot=self.Rddot * factor,
            Rdddot=self.Rdddot * factor, params=self.params, r_floor=self.r_floor, u=self.u,
            error_estimate=self.error_estimate, c3_convention=self.c3_convention,
        )

    def rescaled(self, R_M: float) -> "ProfileGrid":
        """返回峰值为 R_M 的副本; R/R_M 逐点不变, c1 随之更新"""
        factor = R_M / self.params.R_M
        grid = self.scaled(factor)
        return ProfileGrid(
            ell=grid.ell, R=grid.R, Rdot=grid.Rdot, Rddot=grid.Rddot, Rdddot=grid.Rdddot,
            params=self.params.with_amplitude(R_M), r_floor=self.r_floor, u=self.u,
            error_estimate=self.error_estimate, c3_convention=self.c3_convention,
        )

    def summary(self) -> Dict[str, Any]:
        return {
            "n_points": self.size,
            "ell_max": self.ell_max,
            "r_floor": self.r_floor,
            "error_estimate": self.error_estimate,
            "c3_convention": self.c3_convention,
            **self.params.model_dump(),
        }
