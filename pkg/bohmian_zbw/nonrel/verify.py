"""
非相对论 Bohm 解的检验, 以及相对论推广中的两个不可行性演示。
"""
import math
from typing import Optional, Sequence

import numpy as np
from scipy import optimize

from ..errors import DomainError
from ..field import energy_budget
from ..kinematics import PhysicalParams, lorentz_gamma
from ..profile import ProfileParams, profile_derivatives
from ..utils.config import _settings
from ..utils.zbwlog import logger
from .model import LimitVerdict, MassRow, NonRelProfile, NonRelResidualReport, NoGoReport, ProfileKind

LIMIT_THRESHOLD = 0.1
ZERO_GUARD = 0.1


def nonrel_profile(kind: ProfileKind, k: float, A: float = 1.0, B: Optional[float] = None,
                   v: float = 0.5, m: float = 1.0, hbar: float = 1.0) -> NonRelProfile:
    """B 默认: cosine 为 0, exponential 为 1"""
    if not k > 0.0:
        raise DomainError(f"k must be positive, got {k}")
    if kind not in ("cosine", "exponential"):
        raise DomainError(f"unknown profile kind {kind!r}")
    if not (m > 0.0 and hbar > 0.0):
        raise DomainError("m and hbar must be positive")
    if B is None:
        B = 0.0 if kind == "cosine" else 1.0
    profile = NonRelProfile(kind=kind, k=k, A=A, B=B, v=v, m=m, hbar=hbar)
    if profile.divergent:
        logger.debug(f"exponential profile (A={A}, B={B}) flagged divergent")
    return profile


def nonrel_split_residuals(profile: NonRelProfile, p: Optional[float] = None, E: Optional[float] = None,
                           x: Optional[np.ndarray] = None, t: float = 0.0,
                           threshold: float = 1e-5) -> NonRelResidualReport:
    """
    用中心差分检验 Hamilton-Jacobi 方程、连续性方程与 V_Q 为常数的要求。

    S = p x - E t, p 默认 m v, E 默认 p²/2m + V_Q。差分步长 h = fd_step / sqrt(k),
    cosine 零点 0.1/sqrt(k) 以内的点被剔除并计数。
    """
    p = profile.momentum if p is None else p
    E = p * p / (2.0 * profile.m) + profile.V_Q if E is None else E
    kappa = profile.wavenumber
    h = _settings.fd_step / kappa
    if x is None:
        span = 2.0 * math.pi / kappa
        x = profile.v * t + np.linspace(-span, span, 401)
    x = np.asarray(x, dtype=float)

    if profile.kind == "cosine":
        phase = kappa * (x - profile.v * t) - 0.5 * math.pi
        distance = np.abs(phase - math.pi * np.round(phase / math.pi)) / kappa
        keep = distance > ZERO_GUARD / kappa
    else:
        keep = np.ones_like(x, dtype=bool)
    xs = x[keep]
    if xs.size == 0:
        raise DomainError("no sample points left after excluding cosine zeros")

    def action(xv, tv):
        return p * xv - E * tv

    R = profile.amplitude(xs, t)
    laplacian = (profile.amplitude(xs + h, t) - 2.0 * R + profile.amplitude(xs - h, t)) / (h * h)
    V_Q = -(profile.hbar ** 2 / (2.0 * profile.m)) * laplacian / R

    dS_dt = (action(xs, t + h) - action(xs, t - h)) / (2.0 * h)
    dS_dx = (action(xs + h, t) - action(xs - h, t)) / (2.0 * h)
    hj = dS_dt + dS_dx ** 2 / (2.0 * profile.m) + V_Q

    def density(xv, tv):
        return np.square(profile.amplitude(xv, tv))

    drho_dt = (density(x, t + h) - density(x, t - h)) / (2.0 * h)
    # dS/dx = p 为常数, 通量散度化为 (p/m) drho/dx
    dflux_dx = (density(x + h, t) - density(x - h, t)) / (2.0 * h) * (p / profile.m)
    continuity = drho_dt + dflux_dx

    deviation = float(np.max(np.abs(V_Q - profile.V_Q)))
    hj_residual = float(np.max(np.abs(hj)))
    continuity_residual = float(np.max(np.abs(continuity)))
    passed = bool(deviation < threshold and hj_residual < threshold and continuity_residual < threshold)
    return NonRelResidualReport(
        kind=profile.kind,
        n_points=int(x.size),
        n_excluded=int(x.size - xs.size),
        fd_step=h,
        V_Q_expected=profile.V_Q,
        V_Q_mean=float(np.mean(V_Q)),
        V_Q_std=float(np.std(V_Q)),
        max_V_Q_deviation=deviation,
        hj_residual=hj_residual,
        continuity_residual=continuity_residual,
        threshold=threshold,
        passed=passed,
    )


def nonrel_limit_check(params: ProfileParams, phys: PhysicalParams,
                       threshold: float = LIMIT_THRESHOLD) -> LimitVerdict:
    """
    原点处 sqrt(beta) = sqrt(1 + f(f+2)) 能否展开到一阶。

    修正项 f(f+2) 不小于 threshold 时判为 invalid; f 为 1 量级时总是如此。
    """
    _, rddot = profile_derivatives(params.R_M, 1, params)
    ratio = rddot / params.R_M
    curvature = abs(params.lambda_r ** 2 * ratio)
    rest = phys.rest_energy
    budget = energy_budget(params, phys, phys.c)

    valid = curvature < threshold
    verdict = "expansion valid" if valid else "expansion invalid"
    bohm = -(phys.hbar ** 2 / (2.0 * phys.m)) * ratio
    result = LimitVerdict(
        f=params.f,
        curvature=curvature,
        V_QM_ratio=budget.V_QM / rest,
        threshold=threshold,
        valid=valid,
        verdict=verdict,
        H_exact=rest * math.sqrt(1.0 + curvature),
        H_linearized=rest * (1.0 + 0.5 * curvature),
        H_nonrel=phys.m * phys.c ** 2 + 0.5 * phys.m * phys.v_o ** 2 + bohm,
    )
    logger.debug(f"non-relativistic limit: f(f+2) = {curvature:.6g} -> {verdict}")
    return result


def nogo_checks(masses: Sequence[float], gamma: float = 1.25, v_prime: float = 0.1,
                v_second: float = 0.01, k: float = 1.0, ell: float = 0.3,
                hbar: float = 1.0, c: float = 1.0) -> NoGoReport:
    """
    两个不可行性的数值演示, 测试剖面取 R = cos(sqrt(k) ell)。

    (1) v Rdot (m gamma c² - H) = 0 在 v, Rdot 非零时只有 H = m gamma c², 即 V_Q = 0;
    (2) 同时允许 H 与 p 随时间变化时得到的约束由四组项相加, 前三组随 m 以 1/m²
        衰减, 最后一组 2 gamma³ 与质量无关, 因此对所有质量同时成立是不可能的。
    """
    masses = [float(m) for m in masses]
    if len(masses) < 3:
        raise DomainError("mass list needs at least 3 entries")
    if any(m <= 0.0 for m in masses) or any(b <= a for a, b in zip(masses, masses[1:])):
        raise DomainError("masses must be positive and strictly increasing")
    if not gamma > 1.0:
        raise DomainError("gamma must exceed 1 so that v is non-zero")

    v = c * math.sqrt(1.0 - 1.0 / gamma ** 2)
    if not math.isclose(lorentz_gamma(v, c), gamma, rel_tol=1e-12):
        raise DomainError(f"inconsistent gamma {gamma}")
    kappa = math.sqrt(k)
    R = math.cos(kappa * ell)
    rdot = -kappa * math.sin(kappa * ell)
    rddot = -k * R
    rdddot = k * kappa * math.sin(kappa * ell)
    d1, d2, d3 = rdot / R, rddot / R, rdddot / R

    rows = []
    for m in masses:
        rest = m * gamma * c ** 2
        root = optimize.brentq(lambda H: v * rdot * (rest - H), 0.0, 2.0 * rest, xtol=1e-15, rtol=1e-15)

        H = math.sqrt(m ** 2 * gamma ** 2 * c ** 4 - hbar ** 2 * c ** 2 / gamma ** 2 * d2
                      - hbar ** 2 * v_prime * d1)
        g1 = (H - rest - hbar ** 2 * v_second / (4.0 * rest * v)) * 4.0 * d1 / (m * v_prime)
        g2 = 3.0 * hbar ** 2 / (m ** 2 * gamma * c ** 2) * (d1 ** 2 + d2)
        g3 = hbar ** 2 / (m ** 2 * gamma ** 3 * v_prime) * (3.0 * d2 * d1 + d3)
        g4 = 2.0 * gamma ** 3
        hbar_sum = g1 + g2 + g3
        rows.append(MassRow(m=m, forced_H=root, rest_energy=rest, g1=g1, g2=g2, g3=g3, g4=g4,
                            hbar_sum=hbar_sum, total=hbar_sum + g4))

    totals = np.array([row.total for row in rows])
    ratios = [b.hbar_sum / a.hbar_sum for a, b in zip(rows, rows[1:])]
    rest_energy_forced = all(math.isclose(row.forced_H, row.rest_energy, rel_tol=1e-12) for row in rows)
    crosses_zero = bool(np.any(totals == 0.0) or np.any(np.sign(totals[1:]) != np.sign(totals[:-1])))
    g4_constant = all(row.g4 == rows[0].g4 for row in rows)
    shrinking = all(abs(b.hbar_sum) < abs(a.hbar_sum) for a, b in zip(rows, rows[1:]))
    report = NoGoReport(
        gamma=gamma, rows=rows, decade_ratios=ratios, rest_energy_forced=rest_energy_forced,
        crosses_zero=crosses_zero, g4_constant=g4_constant,
        confirmed=bool(rest_energy_forced and not crosses_zero and g4_constant and shrinking),
    )
    logger.debug(f"no-go checks over masses {masses}: confirmed={report.confirmed}")
    return report
