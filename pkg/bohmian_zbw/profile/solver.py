"""
剖面 R(ell) 的求解。

形状常数 f 由 f sqrt(2(f+2)) = target 求根得到; 剖面本身没有初等闭式, 只能通过积分
ell(R) = (lambda_r / sqrt(f)) ∫_{R}^{R_M} dR' / (R_M sqrt(g(R'/R_M)))
得到, 其中 g(x) = f(1/x² - 1) - 4 ln x。峰值处被积函数有 1/sqrt(1 - x) 型可积奇点,
代换 u = sqrt(1 - R/R_M) 之后被积函数有界光滑, 可以直接使用 Gauss-Legendre 求积。
"""
import math
from typing import Optional, Tuple

import numpy as np
from scipy import integrate, optimize

from ..errors import DomainError, QuadratureError, TruncationError
from ..utils.config import _settings
from ..utils.zbwlog import logger
from .model import ArrayLike, ProfileExtremes, ProfileGrid, ProfileParams

_LOW_ORDER = 8
_HIGH_ORDER = 16


def shape_map(f: float) -> float:
    """t -> t sqrt(2(t+2)), 在 (0, inf) 上严格递增"""
    return f * math.sqrt(2.0 * (f + 2.0))


def solve_f(target: float, tol: Optional[float] = None) -> float:
    """
    求解 f sqrt(2(f+2)) = target 的唯一正根。

    :param target: 正数; target = 2/gamma_o 对应与标准 Zitterbewegung 匹配的条件
    :param tol: 根的绝对容差, 默认取 Settings.f_tolerance
    """
    if not target > 0.0 or not math.isfinite(target):
        raise DomainError(f"target must be a positive finite number, got {target}")
    tol = _settings.f_tolerance if tol is None else tol

    hi = 1.0
    while shape_map(hi) < target:
        hi *= 2.0
    root = optimize.brentq(lambda t: shape_map(t) - target, 0.0, hi,
                           xtol=min(tol, 1e-14) * 1e-2, rtol=4 * np.finfo(float).eps, maxiter=200)
    residual = abs(shape_map(root) - target)
    logger.debug(f"solve_f({target:.6g}) = {root:.15g}, residual {residual:.2e}")
    return float(root)


def profile_radicand(x: ArrayLike, f: float) -> ArrayLike:
    """
    g(x) = f(1/x² - 1) - 4 ln x, x = R/R_M ∈ (0, 1]。

    两项在定义域上都非负, 相加不会产生抵消。
    """
    x = np.asarray(x, dtype=float)
    value = f * (1.0 - x) * (1.0 + x) / (x * x) - 4.0 * np.log(x)
    return float(value) if value.ndim == 0 else value


def scaled_radicand(u: ArrayLike, f: float) -> ArrayLike:
    """
    h(u) = g(1 - u²) / u², 在 u = 0 处连续延拓为 2(f+2)。

    -ln(1-w)/w 借助 log1p 计算, w -> 0 时取极限 1。
    """
    w = np.square(np.asarray(u, dtype=float))
    x = 1.0 - w
    safe_w = np.where(w > 0.0, w, 1.0)
    log_ratio = np.where(w > 0.0, -np.log1p(-safe_w) / safe_w, 1.0)
    value = f * (2.0 - w) / (x * x) + 4.0 * log_ratio
    return float(value) if value.ndim == 0 else value


def _ell_integrand(u: ArrayLike, f: float) -> ArrayLike:
    return 1.0 / np.sqrt(scaled_radicand(u, f))


def _check_amplitude(R: ArrayLike, params: ProfileParams) -> np.ndarray:
    R = np.asarray(R, dtype=float)
    if np.any(R <= 0.0) or np.any(R > params.R_M * (1.0 + 1e-12)):
        raise DomainError(f"amplitude must lie in (0, R_M = {params.R_M}]")
    return np.minimum(R, params.R_M)


def _jet(R: np.ndarray, rdot: np.ndarray, params: ProfileParams) -> Tuple[np.ndarray, np.ndarray]:
    c1, lam2 = params.c1, params.lambda_r ** 2
    rddot = -(c1 / lam2) * (c1 / R ** 3 + 2.0 / R)
    rdddot = (c1 / lam2) * (3.0 * c1 / R ** 4 + 2.0 / R ** 2) * rdot
    return rddot, rdddot


def profile_derivatives(R: float, side: int, params: ProfileParams) -> Tuple[float, float]:
    """
    剖面的闭式一阶与二阶导数。

    :param R: 振幅, 0 < R <= R_M
    :param side: ell 的符号; ell > 0 (及 ell = 0) 时 Rdot <= 0, ell < 0 时 Rdot >= 0
    :return: (Rdot, Rddot)
    """
    R = float(_check_amplitude(R, params))
    x = R / params.R_M
    radicand = 0.0 if x == 1.0 else max(profile_radicand(x, params.f), 0.0)
    magnitude = math.sqrt(params.f) * params.R_M / params.lambda_r * math.sqrt(radicand)
    rdot = -magnitude if side >= 0 else magnitude
    rddot, _ = _jet(np.asarray(R), np.asarray(rdot), params)
    return rdot, float(rddot)


def _gauss_legendre(edges: np.ndarray, f: float, order: int) -> np.ndarray:
    nodes, weights = np.polynomial.legendre.leggauss(order)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    points = mid[:, None] + half[:, None] * nodes[None, :]
    return half * (_ell_integrand(points, f) @ weights)


def integrate_profile(params: ProfileParams, r_floor: Optional[float] = None,
                      n_points: Optional[int] = None, rtol: Optional[float] = None) -> ProfileGrid:
    """
    在 u = sqrt(1 - R/R_M) 上等距取 n_points 个点, 逐段求积得到 ell(R)。

    每个区间同时用 8 点和 16 点 Gauss-Legendre 求积, 两者之差作为误差估计;
    累计误差超过 rtol 时抛出 QuadratureError。ell(R_M) = 0 精确成立。
    """
    r_floor = _settings.r_floor if r_floor is None else r_floor
    n_points = _settings.grid_points if n_points is None else n_points
    rtol = _settings.ell_rtol if rtol is None else rtol
    if not 0.0 < r_floor < 1.0:
        raise DomainError(f"r_floor must lie in (0, 1), got {r_floor}")
    if n_points < 16:
        raise DomainError(f"n_points must be at least 16, got {n_points}")

    u = np.linspace(0.0, math.sqrt(1.0 - r_floor), n_points)
    coarse = _gauss_legendre(u, params.f, _LOW_ORDER)
    fine = _gauss_legendre(u, params.f, _HIGH_ORDER)
    scaled = np.concatenate(([0.0], np.cumsum(fine)))
    estimate = float(np.sum(np.abs(fine - coarse)) / scaled[-1])
    if not estimate <= rtol:
        raise QuadratureError(estimate, rtol, where="profile quadrature")

    ell = 2.0 * params.lambda_r / math.sqrt(params.f) * scaled
    R = params.R_M * (1.0 - u * u)
    R[0] = params.R_M
    rdot = -math.sqrt(params.f) * params.R_M / params.lambda_r * u * np.sqrt(scaled_radicand(u, params.f))
    rddot, rdddot = _jet(R, rdot, params)
    logger.debug(f"profile grid: f={params.f:.6g}, n={n_points}, ell_max={ell[-1]:.6g}, "
                 f"error estimate {estimate:.2e}")
    return ProfileGrid(ell=ell, R=R, Rdot=rdot, Rddot=rddot, Rdddot=rdddot, params=params,
                       r_floor=r_floor, u=u, error_estimate=estimate)


def ell_of_amplitude(params: ProfileParams, R: float, rtol: Optional[float] = None) -> float:
    """单点的 ell(R) >= 0, 自适应求积"""
    rtol = _settings.ell_rtol if rtol is None else rtol
    R = float(_check_amplitude(R, params))
    u_end = math.sqrt(max(1.0 - R / params.R_M, 0.0))
    if u_end == 0.0:
        return 0.0
    value, error = integrate.quad(_ell_integrand, 0.0, u_end, args=(params.f,),
                                  epsabs=1e-15, epsrel=rtol, limit=200)
    if error > max(rtol * value, 1e-15):
        raise QuadratureError(error / value, rtol, where="ell_of_amplitude")
    return 2.0 * params.lambda_r / math.sqrt(params.f) * value


def small_ell_profile(ell: ArrayLike, params: ProfileParams) -> ArrayLike:
    """峰值附近的二次近似 R ≈ R_M (1 - f(f+2) ell² / (2 lambda_r²))"""
    ell = np.asarray(ell, dtype=float)
    value = params.R_M * (1.0 - params.f * (params.f + 2.0) * ell ** 2 / (2.0 * params.lambda_r ** 2))
    return float(value) if value.ndim == 0 else value


def profile_extremes(params: ProfileParams) -> ProfileExtremes:
    f, lam = params.f, params.lambda_r
    ratio = 1.0 / math.sqrt(1.0 + 1.0 / (2.0 * f))
    ell_m = ell_of_amplitude(params, params.R_M * ratio)
    ell_quadratic = lam * math.sqrt(2.0 * (1.0 - ratio) / (f * (f + 2.0)))

    inner = 1.0 - 1.0 / (2.0 * f)
    printed = f * (1.0 - 1.0 / math.sqrt(inner)) if inner > 0.0 else math.nan
    if not printed > 0.0:
        logger.warning(f"closed-form turning point radicand is {printed:.6g} at f={f:.6g}; "
                       f"using quadrature ell_M = {ell_m:.6g}")
    return ProfileExtremes(r_m_ratio=ratio, ell_m=ell_m, ell_m_quadratic=ell_quadratic,
                           printed_radicand=printed)


def _tail_integral(params: ProfileParams, x_floor: float) -> float:
    """∫ x² dell / lambda_r 从剖面截止处到 R = 0 的部分"""
    f = params.f
    value, _ = integrate.quad(lambda x: x * x / math.sqrt(profile_radicand(x, f)), 0.0, x_floor,
                              epsabs=1e-16, epsrel=1e-10, limit=200)
    return value / math.sqrt(f)


def normalize_profile(grid: ProfileGrid, tail_tolerance: Optional[float] = None) -> float:
    """
    使 ∫ R² dell 在偶延拓的整个网格区间上等于 1 的 R_M。

    网格本身不被修改, 调用方用 grid.rescaled(R_M) 得到归一化后的副本。
    截止处以外的尾部相对贡献超过 tail_tolerance 时抛出 TruncationError。
    """
    tail_tolerance = _settings.tail_tolerance if tail_tolerance is None else tail_tolerance
    params = grid.params
    norm = 2.0 * integrate.simpson(grid.R ** 2, x=grid.ell)

    inside = norm / (2.0 * params.R_M ** 2 * params.lambda_r)
    tail = _tail_integral(params, float(grid.R[-1] / params.R_M))
    fraction = tail / (tail + inside)
    if fraction > tail_tolerance:
        raise TruncationError(fraction, tail_tolerance)

    R_M = params.R_M / math.sqrt(norm)
    logger.debug(f"normalized R_M = {R_M:.12g} (tail fraction {fraction:.2e})")
    return float(R_M)
