import math
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from ..errors import SingularConfigurationError
from ..kinematics import PhysicalParams
from ..profile import solve_f

Command = Literal["profile", "trajectory", "uncertainty", "verify", "sweep"]
OutputFormat = Literal["csv", "json"]

DEFAULT_FORMATS: Dict[str, OutputFormat] = {
    "profile": "csv",
    "trajectory": "csv",
    "uncertainty": "json",
    "verify": "json",
    "sweep": "json",
}


class RunConfig(BaseModel):
    """一次运行的全部输入, 来自 JSON 配置文件与命令行参数 (后者优先)"""
    command: Command
    m: float = Field(1.0, description="静质量 (自然单位)")
    v_o: float = Field(0.6, description="v_o / c")
    theta_deg: float = Field(0.0, description="探测方向与 v_o 的夹角, 度")
    f: Optional[float] = Field(None, description="形状常数, 与 target 二选一")
    target: Optional[float] = Field(None, description="f sqrt(2(f+2)) 的目标值, 都未给出时取 2")
    grid: int = Field(4001, description="剖面网格点数")
    r_floor: float = Field(0.05, description="网格截止处 R/R_M")
    normalize: bool = Field(False, description="输出前把剖面归一化")
    dtau: Optional[float] = Field(None, description="tau 步长, 默认 T_harmonic / 2000")
    periods: int = Field(10, description="积分的完整周期数")
    vi0: float = Field(1.0, description="v_i(0) / c")
    scheme: Literal["leapfrog2", "leapfrog4"] = "leapfrog4"
    drift_tolerance: float = 1e-8
    certify_threshold: float = 1e-6
    v_o_values: List[float] = Field(default_factory=list, description="sweep 的 v_o / c 取值")
    theta_values_deg: List[float] = Field(default_factory=list, description="sweep 的 theta 取值, 度")
    out: Optional[Path] = None
    format: Optional[OutputFormat] = None

    @field_validator("v_o")
    @classmethod
    def validate_v_o(cls, value: float) -> float:
        if value == 0.0:
            raise SingularConfigurationError()
        if not 0.0 < value < 1.0:
            raise ValueError("v_o must be a fraction of c in (0, 1)")
        return value

    @field_validator("theta_deg")
    @classmethod
    def validate_theta(cls, value: float) -> float:
        if not 0.0 <= value <= 90.0:
            raise ValueError("theta must lie in [0, 90] degrees")
        return value

    @field_validator("m", "r_floor", "drift_tolerance", "certify_threshold", "vi0")
    @classmethod
    def validate_positive(cls, value: float) -> float:
        if not value > 0.0:
            raise ValueError("must be positive")
        return value

    @field_validator("dtau")
    @classmethod
    def validate_dtau(cls, value: Optional[float]) -> Optional[float]:
        if value is not None and not value > 0.0:
            raise ValueError("dtau must be positive")
        return value

    @field_validator("grid")
    @classmethod
    def validate_grid(cls, value: int) -> int:
        if value < 16:
            raise ValueError("grid needs at least 16 points")
        return value

    @field_validator("periods")
    @classmethod
    def validate_periods(cls, value: int) -> int:
        if value < 1:
            raise ValueError("periods must be at least 1")
        return value

    @field_validator("v_o_values")
    @classmethod
    def validate_v_o_values(cls, values: List[float]) -> List[float]:
        for value in values:
            if value == 0.0:
                raise SingularConfigurationError()
            if not 0.0 < value < 1.0:
                raise ValueError("sweep v_o values must lie in (0, 1)")
        return values

    @field_validator("theta_values_deg")
    @classmethod
    def validate_theta_values(cls, values: List[float]) -> List[float]:
        if any(not 0.0 <= value <= 90.0 for value in values):
            raise ValueError("sweep theta values must lie in [0, 90] degrees")
        return values

    @model_validator(mode="after")
    def validate_shape(self) -> "RunConfig":
        if self.f is not None and self.target is not None:
            raise ValueError("give exactly one of f and target")
        if self.f is not None and not self.f > 0.0:
            raise ValueError("f must be positive")
        if self.target is not None and not self.target > 0.0:
            raise ValueError("target must be positive")
        if self.vi0 > 1.0:
            raise ValueError("vi0 is a fraction of c and must not exceed 1")
        return self

    @property
    def theta(self) -> float:
        return math.radians(self.theta_deg)

    @property
    def output_format(self) -> OutputFormat:
        if self.format is not None:
            return self.format
        if self.out is not None and self.out.suffix.lower() in (".csv", ".json"):
            return self.out.suffix.lower()[1:]  # type: ignore[return-value]
        return DEFAULT_FORMATS[self.command]

    @property
    def output_path(self) -> Path:
        return self.out if self.out is not None else Path(f"{self.command}.{self.output_format}")

    @property
    def manifest_path(self) -> Path:
        path = self.output_path
        return path.with_name(f"{path.stem}.manifest.json")

    def physical(self, v_o: Optional[float] = None, theta_deg: Optional[float] = None) -> PhysicalParams:
        v_o = self.v_o if v_o is None else v_o
        theta = self.theta if theta_deg is None else math.radians(theta_deg)
        return PhysicalParams(m=self.m, v_o=v_o, theta=theta)

    def resolve_f(self) -> float:
        if self.f is not None:
            return self.f
        return solve_f(2.0 if self.target is None else self.target)


class RunManifest(BaseModel):
    """每次运行都会写出的可复现清单"""
    command: Command
    version: str
    parameters: Dict[str, Any]
    derived: Dict[str, Any] = Field(default_factory=dict)
    outputs: Dict[str, str] = Field(default_factory=dict, description="文件名 -> xxh64")
    exit_code: int = 0
    wall_time: float = 0.0
