from pathlib import Path
from typing import Union


class ZbwError(Exception):
    """bohmian_zbw 所有异常的基类"""


class DomainError(ZbwError, ValueError):
    """参数超出运算定义域"""


class SingularConfigurationError(ZbwError):
    """v_o = 0 的奇异构型。

    不继承 ValueError, 这样在 pydantic 校验器中抛出时不会被包装成 ValidationError。
    """

    def __init__(self, message: str = "singular configuration: v_o = 0 makes H and V_Q constant, "
                 "no intrinsic oscillation exists"):
        super().__init__(message)


class NumericError(ZbwError, ArithmeticError):
    """数值过程未达到要求的精度"""


class QuadratureError(NumericError):
    def __init__(self, estimate: float, tolerance: float, where: str = "quadrature"):
        self.estimate = estimate
        self.tolerance = tolerance
        super().__init__(
            f"{where} did not converge: error estimate {estimate:.3e} > tolerance {tolerance:.3e}")


class IntegrationError(NumericError):
    def __init__(self, drift: float, tolerance: float):
        self.drift = drift
        self.tolerance = tolerance
        super().__init__(
            f"energy drift {drift:.3e} exceeds tolerance {tolerance:.3e}; reduce dtau")


class TruncationError(NumericError):
    def __init__(self, tail_fraction: float, tolerance: float):
        self.tail_fraction = tail_fraction
        self.tolerance = tolerance
        super().__init__(
            f"profile tail beyond r_floor carries {tail_fraction:.3e} of the norm "
            f"(tolerance {tolerance:.3e}); lower r_floor")


class OutputError(ZbwError, OSError):
    def __init__(self, path: Union[str, Path], reason: str):
        self.path = Path(path)
        super().__init__(f"无法写入 {self.path}: {reason}")
