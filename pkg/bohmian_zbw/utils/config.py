from typing import Literal

from pydantic import BaseModel, Field, field_validator

from .zbwlog import env_level


class Settings(BaseModel):
    r_floor: float = Field(0.05, description="剖面网格截止处 R/R_M, 网格之外视为尾部")
    grid_points: int = Field(4001, description="剖面网格点数 (在 u = sqrt(1 - R/R_M) 上均匀)")
    f_tolerance: float = Field(1e-12, description="形状常数 f 求根的绝对容差")
    ell_rtol: float = Field(1e-10, description="剖面积分 ell(R) 的相对容差")
    certify_threshold: float = Field(1e-6, description="Klein-Gordon 拆分残差的认证阈值")
    tail_tolerance: float = Field(1e-4, description="归一化时允许的尾部占比")
    drift_tolerance: float = Field(1e-8, description="tau 积分允许的最大相对能量漂移")
    steps_per_period: int = Field(2000, description="默认步长 dtau = T_harmonic / steps_per_period")
    scheme: Literal["leapfrog2", "leapfrog4"] = Field(
        "leapfrog4", description="tau 积分格式, 均为辛且时间可逆")
    fd_step: float = Field(1e-4, description="有限差分步长, 以特征长度为单位")
    log_level: str = Field(default_factory=env_level, description="日志等级, 来自环境变量 ZBW_LOG")

    @field_validator("r_floor")
    @classmethod
    def validate_r_floor(cls, value: float) -> float:
        if not 0.0 < value < 1.0:
            raise ValueError("r_floor must lie in (0, 1)")
        return value

    @field_validator("grid_points")
    @classmethod
    def validate_grid_points(cls, value: int) -> int:
        if value < 16:
            raise ValueError("grid_points must be at least 16")
        return value

    @field_validator("f_tolerance", "ell_rtol", "certify_threshold", "tail_tolerance",
                     "drift_tolerance", "fd_step")
    @classmethod
    def validate_positive(cls, value: float) -> float:
        if not value > 0.0:
            raise ValueError("tolerances must be positive")
        return value

    @field_validator("steps_per_period")
    @classmethod
    def validate_steps(cls, value: int) -> int:
        if value < 16:
            raise ValueError("steps_per_period must be at least 16")
        return value


_settings = Settings()
