"""
洛伦兹运动学与约化 Compton 长度。

内部默认自然单位 (m = hbar = c = 1); 所有运算都显式接收常数, 因此也可以代入 SI 值,
但测试只覆盖自然单位。
"""
import math

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

from .errors import DomainError, SingularConfigurationError


def lorentz_gamma(v: float, c: float = 1.0) -> float:
    """
    洛伦兹因子 1/sqrt(1 - v²/c²)。

    :param v: 速率, 0 <= v < c
    :param c: 光速
    :return: >= 1 的无量纲因子
    """
    if not (c > 0.0 and math.isfinite(c)):
        raise DomainError(f"c must be positive and finite, got {c}")
    if not math.isfinite(v):
        raise DomainError(f"speed must be finite, got {v}")
    if v < 0.0:
        raise DomainError(f"speed must be non-negative, got {v}")
    if v >= c:
        raise DomainError(f"speed {v} must stay below c = {c}")
    ratio = v / c
    return 1.0 / math.sqrt((1.0 - ratio) * (1.0 + ratio))


class DirectionSpec(BaseModel):
    """探测方向 s 与 v_o 夹角 theta 时的投影速度与洛伦兹因子"""
    model_config = ConfigDict(frozen=True)

    theta: float
    v_s: float
    gamma_s: float


class PhysicalParams(BaseModel):
    """
    粒子与单位常数。

    v_o = 0 是奇异构型, 在构造时直接抛出 SingularConfigurationError,
    不会被静默地当作极限处理。
    """
    model_config = ConfigDict(frozen=True)

    m: float = Field(1.0, description="静质量")
    hbar: float = Field(1.0, description="作用量常数")
    c: float = Field(1.0, description="光速")
    v_o: float = Field(..., description="可观测速度, 0 < v_o < c")
    theta: float = Field(0.0, description="探测方向与 v_o 的夹角 (弧度), [0, pi/2]")

    @field_validator("m", "hbar", "c")
    @classmethod
    def validate_positive(cls, value: float) -> float:
        if not (value > 0.0 and math.isfinite(value)):
            raise ValueError("m, hbar and c must be positive and finite")
        return value

    @field_validator("v_o")
    @classmethod
    def validate_v_o(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("v_o must be finite")
        if value == 0.0:
            raise SingularConfigurationError()
        if value < 0.0:
            raise ValueError("v_o must be positive")
        return value

    @field_validator("theta")
    @classmethod
    def validate_theta(cls, value: float) -> float:
        if not 0.0 <= value <= math.pi / 2 + 1e-15:
            raise ValueError("theta must lie in [0, pi/2]")
        return min(value, math.pi / 2)

    @model_validator(mode="after")
    def validate_subluminal(self) -> "PhysicalParams":
        if self.v_o >= self.c:
            raise ValueError(f"v_o = {self.v_o} must stay below c = {self.c}")
        return self

    @computed_field
    @property
    def gamma_o(self) -> float:
        return lorentz_gamma(self.v_o, self.c)

    @computed_field
    @property
    def gamma_s(self) -> float:
        return direction_gamma(self).gamma_s

    @computed_field
    @property
    def lambda_r(self) -> float:
        return reduced_compton(self)

    @property
    def rest_energy(self) -> float:
        """m gamma_o c², 模型中所有能量的自然尺度"""
        return self.m * self.gamma_o * self.c ** 2

    @property
    def momentum(self) -> float:
        """沿 s 方向的可观测动量 p_o = m gamma_o v_s"""
        return self.m * self.gamma_o * direction_gamma(self).v_s

    def with_direction(self, theta: float) -> "PhysicalParams":
        return PhysicalParams(m=self.m, hbar=self.hbar, c=self.c, v_o=self.v_o, theta=theta)


def direction_gamma(params: PhysicalParams) -> DirectionSpec:
    """投影速度 v_s = v_o cos(theta) 及其洛伦兹因子"""
    if math.isclose(params.theta, math.pi / 2, rel_tol=0.0, abs_tol=1e-15):
        v_s = 0.0
    else:
        v_s = params.v_o * math.cos(params.theta)
    return DirectionSpec(theta=params.theta, v_s=v_s, gamma_s=lorentz_gamma(v_s, params.c))


def reduced_compton(params: PhysicalParams) -> float:
    """
    约化 Compton 长度 lambda_r = hbar / (m c gamma_o gamma_s)。

    theta = 0 时退化为 hbar / (m c gamma_o²)。
    """
    gamma_o = lorentz_gamma(params.v_o, params.c)
    gamma_s = direction_gamma(params).gamma_s
    return params.hbar / (params.m * params.c * gamma_o * gamma_s)
