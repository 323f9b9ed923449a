import asyncio
from dataclasses import dataclass, field
from typing import Any, Awaitable, Callable, Dict, List, Optional, Union

from ..dynamics import (
    harmonic_spec,
    integrate_tau,
    period_quadrature,
    turning_point,
    uncertainty_products,
)
from ..errors import DomainError
from ..field import field_samples, kg_split_residual
from ..nonrel import nogo_checks, nonrel_limit_check, nonrel_profile, nonrel_split_residuals
from ..profile import ProfileGrid, ProfileParams, integrate_profile, normalize_profile, profile_extremes
from ..utils.zbwlog import logger, stage
from .models import RunConfig

PROFILE_COLUMNS = ["ell", "R", "V_Q", "H", "beta"]
TRAJECTORY_COLUMNS = ["tau", "ell", "v_i", "V_Q", "E_Q", "drift"]
SWEEP_COLUMNS = ["v_o", "theta_deg", "gamma_o", "gamma_s", "dx_dp", "dE_dt", "omega", "A"]
NOGO_MASSES = (1.0, 10.0, 100.0)


@dataclass
class CommandResult:
    records: Union[List[Dict[str, Any]], Dict[str, Any]]
    columns: Optional[List[str]] = None
    derived: Dict[str, Any] = field(default_factory=dict)
    exit_code: int = 0


Handler = Callable[[RunConfig], Awaitable[CommandResult]]
handlers: Dict[str, Handler] = {}


def register_handler(command: str) -> Callable[[Handler], Handler]:
    """注册子命令处理器的装饰器"""
    if not command:
        raise ValueError("command 名称不能为空")

    def decorator(func: Handler) -> Handler:
        if command in handlers:
            raise RuntimeError(f"子命令 {command} 发生冲突, 请更换名称")
        handlers[command] = func
        return func
    return decorator


def _base_derived(config: RunConfig, f: float) -> Dict[str, Any]:
    phys = config.physical()
    params = ProfileParams.from_physics(f, phys)
    spec = harmonic_spec(params, phys)
    return {
        "gamma_o": phys.gamma_o,
        "gamma_s": phys.gamma_s,
        "lambda_r": phys.lambda_r,
        "f": f,
        "omega": spec.omega,
        "A": spec.A,
    }


def _build_grid(config: RunConfig, f: float) -> ProfileGrid:
    params = ProfileParams.from_physics(f, config.physical())
    with stage("profile grid"):
        grid = integrate_profile(params, r_floor=config.r_floor, n_points=config.grid)
        if config.normalize:
            grid = grid.rescaled(normalize_profile(grid))
    return grid


@register_handler("profile")
async def run_profile(config: RunConfig) -> CommandResult:
    f = config.resolve_f()
    phys = config.physical()
    grid = _build_grid(config, f)
    report = kg_split_residual(grid, phys, config.certify_threshold)
    derived = _base_derived(config, f)
    derived.update(
        R_M=grid.params.R_M,
        ell_max=grid.ell_max,
        extremes=profile_extremes(grid.params).model_dump(),
        residual=report.model_dump(),
    )
    return CommandResult(records=field_samples(grid, phys).records(), columns=PROFILE_COLUMNS,
                         derived=derived, exit_code=0 if report.certified else 1)


@register_handler("trajectory")
async def run_trajectory(config: RunConfig) -> CommandResult:
    f = config.resolve_f()
    phys = config.physical()
    grid = _build_grid(config, f)
    v_i0 = config.vi0 * phys.c
    with stage("tau integration") as timing:
        trajectory = await asyncio.to_thread(
            integrate_tau, grid, phys, v_i0, config.periods, config.dtau, config.scheme, config.drift_tolerance)
    derived = _base_derived(config, f)
    derived.update(
        R_M=grid.params.R_M,
        trajectory=trajectory.summary(),
        integration_seconds=timing["seconds"],
        period_quadrature=period_quadrature(grid.params, phys, v_i0),
        turning_point=turning_point(grid.params, phys, v_i0).model_dump(),
    )
    return CommandResult(records=trajectory.records(), columns=TRAJECTORY_COLUMNS, derived=derived)


def _uncertainty_row(f: float, config: RunConfig, v_o: float, theta_deg: float) -> Dict[str, float]:
    phys = config.physical(v_o=v_o, theta_deg=theta_deg)
    params = ProfileParams.from_physics(f, phys)
    products = uncertainty_products(params, phys)
    return {"v_o": v_o, "theta_deg": theta_deg, **products.model_dump()}


@register_handler("uncertainty")
async def run_uncertainty(config: RunConfig) -> CommandResult:
    f = config.resolve_f()
    row = _uncertainty_row(f, config, config.v_o, config.theta_deg)
    return CommandResult(records=[row], columns=SWEEP_COLUMNS, derived=_base_derived(config, f))


@register_handler("verify")
async def run_verify(config: RunConfig) -> CommandResult:
    f = config.resolve_f()
    phys = config.physical()
    grid = _build_grid(config, f)

    residual = kg_split_residual(grid, phys, config.certify_threshold)
    cosine = nonrel_split_residuals(nonrel_profile("cosine", 1.0))
    exponential = nonrel_profile("exponential", 1.0, A=1.0, B=1.0)
    limit = nonrel_limit_check(grid.params, phys)
    nogo = nogo_checks(NOGO_MASSES)

    checks = {
        "kg_split": residual.certified,
        "nonrel_cosine": cosine.passed,
        "nonrel_exponential_rejected": exponential.divergent and not exponential.accepted,
        "nonrel_limit_invalid": not limit.valid,
        "nogo": nogo.confirmed,
    }
    failed = sorted(name for name, passed in checks.items() if not passed)
    if failed:
        logger.warning(f"verification failed: {', '.join(failed)}")
    else:
        logger.success("all verification checks certified")

    document = {
        "checks": checks,
        "certified": not failed,
        "kg_split": residual.model_dump(),
        "nonrel_cosine": cosine.model_dump(),
        "nonrel_exponential": exponential.model_dump(),
        "nonrel_limit": limit.model_dump(),
        "nogo": nogo.model_dump(),
    }
    records: Union[List[Dict[str, Any]], Dict[str, Any]] = document
    if config.output_format == "csv":
        records = [{"check": name, "passed": passed} for name, passed in sorted(checks.items())]
    return CommandResult(records=records, columns=["check", "passed"] if config.output_format == "csv" else None,
                         derived=_base_derived(config, f), exit_code=1 if failed else 0)


async def run_sweep(config: RunConfig) -> List[Dict[str, float]]:
    """
    在 v_o 与 theta 的网格上计算不确定度乘积。

    每个点独立地在线程中计算, 结果按 (v_o, theta_deg) 排序, 与完成顺序无关。
    """
    if not config.v_o_values and not config.theta_values_deg:
        raise DomainError("sweep range is empty: give a v_o range, a theta range or both")
    v_values = config.v_o_values or [config.v_o]
    theta_values = config.theta_values_deg or [config.theta_deg]
    f = config.resolve_f()
    points = [(v, theta) for v in v_values for theta in theta_values]
    rows = await asyncio.gather(*(asyncio.to_thread(_uncertainty_row, f, config, v, theta) for v, theta in points))
    return sorted(rows, key=lambda row: (row["v_o"], row["theta_deg"]))


@register_handler("sweep")
async def run_sweep_command(config: RunConfig) -> CommandResult:
    rows = await run_sweep(config)
    derived = {"f": config.resolve_f(), "n_points": len(rows)}
    return CommandResult(records=rows, columns=SWEEP_COLUMNS, derived=derived)
