"""
内禀时间 tau 上的非线性振动。

状态取 (ell, v_i), 满足 dell/dtau = -v_i, dv_i/dtau = (1/(m gamma_o)) dV_Q/dell,
于是 E_Q = V_Q(ell) + m gamma_o v_i² / 2 守恒。积分使用固定步长的对称蛙跳格式:
leapfrog2 为速度 Verlet, leapfrog4 为五段对称组合, 两者都是辛且时间可逆的。
"""
import math
from typing import Dict, Optional, Tuple

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicHermiteSpline

from ..errors import DomainError, IntegrationError, NumericError
from ..kinematics import PhysicalParams
from ..profile import ProfileGrid, ProfileParams, ell_of_amplitude, profile_radicand, scaled_radicand
from ..profile.model import ArrayLike
from ..utils.config import _settings
from ..utils.zbwlog import logger
from .harmonic import harmonic_spec
from .model import Scheme, TauState, TauTrajectory, TurningPoint

_SUZUKI = 1.0 / (4.0 - 4.0 ** (1.0 / 3.0))

COMPOSITIONS: Dict[str, Tuple[float, ...]] = {
    "leapfrog2": (1.0,),
    "leapfrog4": (_SUZUKI, _SUZUKI, 1.0 - 4.0 * _SUZUKI, _SUZUKI, _SUZUKI),
}


class TauForce:
    """
    由剖面网格得到的 V_Q(ell) 与加速度 d²ell/dtau²。

    网格带有 u 列时, 用 u(ell) 的三次 Hermite 插值 (节点斜率取闭式) 还原 R,
    这样峰值附近的 Rdot 不受 sqrt(1 - R/R_M) 抵消的影响; 否则退回网格的单调插值。
    """

    def __init__(self, grid: ProfileGrid, phys: PhysicalParams):
        params = grid.params
        self.grid = grid
        self.phys = phys
        self.ell_max = grid.ell_max
        self._f = params.f
        self._R_M = params.R_M
        self._c1 = params.c1
        self._rdot_scale = math.sqrt(params.f) * params.R_M / params.lambda_r
        self._rest = phys.rest_energy
        self._accel_scale = 2.0 * phys.c ** 2 * params.c1

        self._u: Optional[CubicHermiteSpline] = None
        if grid.u is not None:
            slope = math.sqrt(params.f) * np.sqrt(scaled_radicand(grid.u, params.f)) / (2.0 * params.lambda_r)
            self._u = CubicHermiteSpline(grid.ell, grid.u, slope, extrapolate=False)

    def _profile(self, ell: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
        ell = np.asarray(ell, dtype=float)
        a = np.abs(ell)
        if np.any(a > self.ell_max * (1.0 + 1e-12)):
            raise DomainError(f"ell outside profile grid [-{self.ell_max:.6g}, {self.ell_max:.6g}]")
        a = np.minimum(a, self.ell_max)
        if self._u is not None:
            u = self._u(a)
            R = self._R_M * (1.0 - u * u)
            magnitude = self._rdot_scale * u * np.sqrt(scaled_radicand(u, self._f))
        else:
            R = np.asarray(self.grid.amplitude(a), dtype=float)
            x = np.minimum(R / self._R_M, 1.0)
            with np.errstate(divide="ignore", invalid="ignore"):
                radicand = np.where(x < 1.0, profile_radicand(x, self._f), 0.0)
            magnitude = self._rdot_scale * np.sqrt(np.maximum(radicand, 0.0))
        return R, -np.sign(ell) * magnitude

    def potential(self, ell: ArrayLike) -> ArrayLike:
        R, _ = self._profile(ell)
        value = self._rest * self._c1 / (R * R)
        return float(value) if value.ndim == 0 else value

    def acceleration(self, ell: ArrayLike) -> ArrayLike:
        """d²ell/dtau² = -(1/(m gamma_o)) dV_Q/dell, dV_Q/dell = (dV_Q/dR) Rdot"""
        R, rdot = self._profile(ell)
        value = self._accel_scale * rdot / (R * R * R)
        return float(value) if value.ndim == 0 else value

    def energy(self, ell: ArrayLike, v_i: ArrayLike) -> ArrayLike:
        kinetic = 0.5 * self.phys.m * self.phys.gamma_o * np.square(v_i)
        return self.potential(ell) + kinetic


def tau_acceleration(ell: ArrayLike, grid: ProfileGrid, phys: PhysicalParams) -> ArrayLike:
    return TauForce(grid, phys).acceleration(ell)


def _resolve_scheme(scheme: Optional[str]) -> Scheme:
    scheme = scheme or _settings.scheme
    if scheme not in COMPOSITIONS:
        raise DomainError(f"unknown scheme {scheme!r}, expected one of {sorted(COMPOSITIONS)}")
    return scheme  # type: ignore[return-value]


def _step(force: TauForce, ell: float, rate: float, acc: float, dtau: float,
          weights: Tuple[float, ...]) -> Tuple[float, float, float]:
    # rate = dell/dtau = -v_i; 每段 kick-drift-kick, 段末加速度留给下一段
    for w in weights:
        h = w * dtau
        rate += 0.5 * h * acc
        ell += h * rate
        acc = force.acceleration(ell)
        rate += 0.5 * h * acc
    return ell, rate, acc


def evolve_state(ell: float, v_i: float, grid: ProfileGrid, phys: PhysicalParams, dtau: float,
                 n_steps: int, scheme: Optional[str] = None) -> TauState:
    """
    把任意状态推进 n_steps 个固定步长, dtau 可以为负 (时间反演检验)。
    返回的 tau 为 n_steps * dtau。
    """
    if n_steps < 0:
        raise DomainError("n_steps must be non-negative")
    if dtau == 0.0:
        raise DomainError("dtau must be non-zero")
    weights = COMPOSITIONS[_resolve_scheme(scheme)]
    force = TauForce(grid, phys)
    rate, acc = -v_i, force.acceleration(ell)
    for _ in range(n_steps):
        ell, rate, acc = _step(force, ell, rate, acc, dtau, weights)
    return TauState(tau=n_steps * dtau, ell=ell, v_i=-rate, E_Q=float(force.energy(ell, -rate)))


def turning_point(params: ProfileParams, phys: PhysicalParams, v_i0: float) -> TurningPoint:
    """从 ell = 0 以 v_i0 出发时的折返点, V_Q(ell_turn) = E_Q"""
    if not 0.0 < v_i0 <= phys.c:
        raise DomainError(f"v_i0 must lie in (0, c], got {v_i0}")
    x_turn = 1.0 / math.sqrt(1.0 + v_i0 ** 2 / (2.0 * params.f * phys.c ** 2))
    R_turn = params.R_M * x_turn
    return TurningPoint(x_turn=x_turn, R_turn=R_turn, ell_turn=ell_of_amplitude(params, R_turn))


def period_quadrature(params: ProfileParams, phys: PhysicalParams, v_i0: float) -> float:
    """
    周期的独立求积 T = 4 ∫ dell / v_i(ell)。

    令 x = x_t + (1 - x_t)(1 - cos phi)/2, 折返点与峰值两端的奇点同时消去:
    T = 4 lambda_r x_t / (sqrt(2) c f) ∫_0^pi x / (sqrt(h(u)) sqrt(x + x_t)) dphi。
    """
    x_t = turning_point(params, phys, v_i0).x_turn
    f = params.f

    def integrand(phi: float) -> float:
        x = x_t + (1.0 - x_t) * 0.5 * (1.0 - math.cos(phi))
        u = math.sqrt(max(1.0 - x, 0.0))
        return x / (math.sqrt(scaled_radicand(u, f)) * math.sqrt(x + x_t))

    value, error = integrate.quad(integrand, 0.0, math.pi, epsabs=0.0, epsrel=1e-13, limit=200)
    logger.debug(f"period quadrature: v_i0={v_i0:.6g}, integral {value:.15g} (error {error:.1e})")
    return 4.0 * params.lambda_r * x_t / (math.sqrt(2.0) * phys.c * f) * value


def integrate_tau(grid: ProfileGrid, phys: PhysicalParams, v_i0: float, n_periods: int = 10,
                  dtau: Optional[float] = None, scheme: Optional[str] = None,
                  drift_tolerance: Optional[float] = None) -> TauTrajectory:
    """
    从 ell = 0 以 v_i = v_i0 出发积分, 直到观测到 n_periods 个完整周期。

    周期由 v_i 过零点 (即折返点) 的线性插值得到; 相对能量漂移超过
    drift_tolerance 时抛出 IntegrationError。
    """
    if not 0.0 < v_i0 <= phys.c:
        raise DomainError(f"v_i0 must lie in (0, c], got {v_i0}")
    if n_periods < 1:
        raise DomainError("n_periods must be at least 1")
    scheme = _resolve_scheme(scheme)
    weights = COMPOSITIONS[scheme]
    drift_tolerance = _settings.drift_tolerance if drift_tolerance is None else drift_tolerance

    params = grid.params
    turn = turning_point(params, phys, v_i0)
    if turn.R_turn <= grid.R[-1]:
        raise DomainError(f"turning amplitude {turn.R_turn:.6g} lies beyond the grid floor "
                          f"{grid.R[-1]:.6g}; lower r_floor")

    T_harmonic = harmonic_spec(params, phys, v_i0).period
    dtau = T_harmonic / _settings.steps_per_period if dtau is None else dtau
    if not dtau > 0.0:
        raise DomainError("dtau must be positive")

    max_steps = int(math.ceil(2.0 * (n_periods + 1) * T_harmonic / dtau)) + 16
    ell_out = np.empty(max_steps + 1)
    rate_out = np.empty(max_steps + 1)
    force = TauForce(grid, phys)

    ell, rate = 0.0, -v_i0
    acc = force.acceleration(ell)
    ell_out[0], rate_out[0] = ell, rate
    crossings = []
    needed = 2 * n_periods + 1
    n = 0
    while len(crossings) < needed:
        if n >= max_steps:
            raise NumericError(f"only {len(crossings)} turning points after {n} steps")
        ell, rate, acc = _step(force, ell, rate, acc, dtau, weights)
        n += 1
        ell_out[n], rate_out[n] = ell, rate
        previous = rate_out[n - 1]
        if previous != 0.0 and (rate == 0.0 or (previous < 0.0) != (rate < 0.0)):
            crossings.append((n - 1) * dtau + dtau * previous / (previous - rate))

    tau = np.arange(n + 1) * dtau
    ell_arr = ell_out[:n + 1].copy()
    v_i = -rate_out[:n + 1]
    V_Q = np.asarray(force.potential(ell_arr))
    E_Q = V_Q + 0.5 * phys.m * phys.gamma_o * v_i ** 2
    drift = np.abs(E_Q - E_Q[0]) / E_Q[0]
    energy_drift = float(np.max(drift))

    c = np.asarray(crossings)
    trajectory = TauTrajectory(
        tau=tau, ell=ell_arr, v_i=v_i, V_Q=V_Q, E_Q=E_Q, drift=drift,
        period_estimate=float(2.0 * (c[-1] - c[0]) / (c.size - 1)),
        period_first=float(c[2] - c[0]),
        period_last=float(c[-1] - c[-3]),
        energy_drift=energy_drift, dtau=dtau, scheme=scheme, v_i0=v_i0,
    )
    logger.info(f"tau integration: {n} steps of {dtau:.3e} ({scheme}), "
                f"period {trajectory.period_estimate:.10g}, drift {energy_drift:.2e}")
    if energy_drift > drift_tolerance:
        raise IntegrationError(energy_drift, drift_tolerance)
    return trajectory
