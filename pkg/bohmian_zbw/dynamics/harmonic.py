import math
from typing import Optional, Tuple, Union

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from ..errors import DomainError
from ..kinematics import PhysicalParams, direction_gamma, reduced_compton
from ..profile import ProfileParams, shape_map, solve_f
from ..profile.model import ArrayLike
from .model import HarmonicSpec, TauTrajectory, UncertaintyProducts


def harmonic_spec(params: ProfileParams, phys: PhysicalParams, v_max: Optional[float] = None) -> HarmonicSpec:
    """
    峰值附近的谐振近似: omega = (c / lambda_r) f sqrt(2(f+2)), A = v_max / omega。

    v_max 默认取 c, 此时 A = lambda_r / (f sqrt(2(f+2)))。
    """
    v_max = phys.c if v_max is None else v_max
    if not v_max > 0.0:
        raise DomainError("v_max must be positive")
    omega = phys.c / params.lambda_r * shape_map(params.f)
    return HarmonicSpec(A=v_max / omega, omega=omega, f=params.f)


def harmonic_trajectory(tau: ArrayLike, spec: HarmonicSpec) -> Tuple[ArrayLike, ArrayLike]:
    """ell(tau) = -A sin(omega tau), v_i(tau) = A omega cos(omega tau)"""
    phase = spec.omega * np.asarray(tau, dtype=float)
    ell = -spec.A * np.sin(phase)
    v_i = spec.A * spec.omega * np.cos(phase)
    if ell.ndim == 0:
        return float(ell), float(v_i)
    return ell, v_i


def standard_zbw(phys: PhysicalParams) -> HarmonicSpec:
    """
    标准 Zitterbewegung: A = hbar / (2 m gamma_o c), omega = 2 m gamma_o c² / hbar。

    附带复现它所需的 f, 即 gamma_o f sqrt(2(f+2)) = 2 的根。
    """
    gamma_o = phys.gamma_o
    A = phys.hbar / (2.0 * phys.m * gamma_o * phys.c)
    omega = 2.0 * phys.m * gamma_o * phys.c ** 2 / phys.hbar
    return HarmonicSpec(A=A, omega=omega, f=solve_f(2.0 / gamma_o))


def two_time_position(t: ArrayLike, tau: ArrayLike, phys: PhysicalParams,
                      motion: Union[TauTrajectory, HarmonicSpec], x0: float = 0.0) -> ArrayLike:
    """
    x(t, tau) = x0 + v_s t + ∫ v_i dtau, 其中 ∫ v_i dtau = -ell(tau) (ell(0) = 0)。

    v_s 是 v_o 在探测方向上的投影, theta = 0 时即 v_o。
    对数值轨迹, ell(tau) 用以 -v_i 为节点斜率的三次 Hermite 插值。
    """
    tau = np.asarray(tau, dtype=float)
    if isinstance(motion, HarmonicSpec):
        ell, _ = harmonic_trajectory(tau, motion)
    else:
        if np.any(tau < motion.tau[0]) or np.any(tau > motion.tau[-1]):
            raise DomainError(f"tau outside trajectory span [{motion.tau[0]:.6g}, {motion.tau[-1]:.6g}]")
        ell = CubicHermiteSpline(motion.tau, motion.ell, -motion.v_i)(tau)
    x = x0 + direction_gamma(phys).v_s * np.asarray(t, dtype=float) - ell
    return float(x) if np.ndim(x) == 0 else x


def uncertainty_products(params: ProfileParams, phys: PhysicalParams,
                         theta: Optional[float] = None) -> UncertaintyProducts:
    """
    以 v_i_max = c 为约定的不确定度乘积。

    dx_dp = A m gamma_o c, dE_dt = (m gamma_o c² / 2) (pi / omega);
    化简后分别为 hbar / (f sqrt(2(f+2)) gamma_s) 与 pi hbar / (2 f sqrt(2(f+2)) gamma_s)。
    lambda_r 按给定方向重新计算, params 只提供 f。
    """
    if theta is not None:
        phys = phys.with_direction(theta)
    lambda_r = reduced_compton(phys)
    omega = phys.c / lambda_r * shape_map(params.f)
    A = phys.c / omega
    gamma_o = phys.gamma_o
    return UncertaintyProducts(
        dx_dp=A * phys.m * gamma_o * phys.c,
        dE_dt=0.5 * phys.m * gamma_o * phys.c ** 2 * math.pi / omega,
        gamma_o=gamma_o,
        gamma_s=direction_gamma(phys).gamma_s,
        A=A,
        omega=omega,
    )
