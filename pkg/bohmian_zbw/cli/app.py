"""
命令行入口 zbw。

子命令: profile, trajectory, uncertainty, verify, sweep。
退出码: 0 成功; 1 验证未通过或数值过程失败; 2 用法错误 (含 v_o = 0 的奇异构型)。
"""
import argparse
import asyncio
import math
import sys
import time
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import orjson
from pydantic import ValidationError

from .. import __version__
from ..errors import DomainError, NumericError, OutputError, SingularConfigurationError
from ..utils.zbwlog import logger, setup_logger
from .commands import CommandResult, handlers
from .models import RunConfig, RunManifest
from .outputs import write_manifest, write_outputs

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# argparse dest -> RunConfig 字段
_FLAG_FIELDS = {
    "m": "m",
    "v_o": "v_o",
    "theta": "theta_deg",
    "f": "f",
    "target": "target",
    "grid": "grid",
    "r_floor": "r_floor",
    "normalize": "normalize",
    "dtau": "dtau",
    "periods": "periods",
    "vi0": "vi0",
    "scheme": "scheme",
    "out": "out",
    "format": "format",
}


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, default=None, help="JSON 配置文件, 命令行参数优先")
    common.add_argument("--m", type=float, default=None, help="静质量")
    common.add_argument("--v-o", dest="v_o", type=float, default=None, help="v_o / c, (0, 1)")
    common.add_argument("--theta", type=float, default=None, help="探测方向夹角, 度")
    common.add_argument("--f", type=float, default=None, help="形状常数")
    common.add_argument("--target", type=float, default=None, help="f sqrt(2(f+2)) 的目标值")
    common.add_argument("--grid", type=int, default=None, help="剖面网格点数")
    common.add_argument("--r-floor", dest="r_floor", type=float, default=None, help="网格截止处 R/R_M")
    common.add_argument("--normalize", action="store_const", const=True, default=None, help="归一化剖面")
    common.add_argument("--dtau", type=float, default=None, help="tau 步长")
    common.add_argument("--periods", type=int, default=None, help="积分周期数")
    common.add_argument("--vi0", type=float, default=None, help="v_i(0) / c")
    common.add_argument("--scheme", choices=["leapfrog2", "leapfrog4"], default=None, help="tau 积分格式")
    common.add_argument("--out", type=Path, default=None, help="输出文件")
    common.add_argument("--format", choices=["csv", "json"], default=None, help="输出格式")

    parser = argparse.ArgumentParser(prog="zbw", description="双时间 Bohm 自由粒子模型的数值工具")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("profile", parents=[common], help="剖面与场量网格")
    sub.add_parser("trajectory", parents=[common], help="tau 上的非线性振动")
    sub.add_parser("uncertainty", parents=[common], help="不确定度乘积")
    sub.add_parser("verify", parents=[common], help="残差与不可行性检验")
    sweep = sub.add_parser("sweep", parents=[common], help="不确定度乘积随 v_o / theta 的扫描")
    sweep.add_argument("--v-o-range", dest="v_o_range", type=float, nargs=3, default=None,
                       metavar=("START", "STOP", "STEP"), help="v_o / c 的闭区间等距取值")
    sweep.add_argument("--theta-range", dest="theta_range", type=float, nargs=3, default=None,
                       metavar=("START", "STOP", "STEP"), help="theta (度) 的闭区间等距取值")
    return parser


def expand_range(start: float, stop: float, step: float) -> List[float]:
    """闭区间 [start, stop] 上步长为 step 的取值, 末端允许 1e-9 的舍入"""
    if not step > 0.0:
        raise UsageError("range step must be positive")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    if count <= 0:
        raise UsageError(f"empty range {start} .. {stop}")
    return [round(start + i * step, 12) for i in range(count)]


def load_config_file(path: Path) -> Dict[str, Any]:
    try:
        data = orjson.loads(path.read_bytes())
    except OSError as e:
        raise UsageError(f"cannot read config {path}: {e.strerror or e}") from e
    except orjson.JSONDecodeError as e:
        raise UsageError(f"config {path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must hold a JSON object")
    return data


def resolve_config(args: argparse.Namespace) -> RunConfig:
    merged: Dict[str, Any] = {}
    if args.config is not None:
        merged.update(load_config_file(args.config))
    for dest, name in _FLAG_FIELDS.items():
        value = getattr(args, dest, None)
        if value is not None:
            merged[name] = value
    if getattr(args, "v_o_range", None) is not None:
        merged["v_o_values"] = expand_range(*args.v_o_range)
    if getattr(args, "theta_range", None) is not None:
        merged["theta_values_deg"] = expand_range(*args.theta_range)
    merged["command"] = args.command
    return RunConfig.model_validate(merged)


async def execute(config: RunConfig) -> Tuple[CommandResult, RunManifest]:
    start = time.perf_counter()
    result = await handlers[config.command](config)
    path = config.output_path
    checksum = await write_outputs(result.records, config.output_format, path, result.columns)
    manifest = RunManifest(
        command=config.command,
        version=__version__,
        parameters=config.model_dump(mode="json"),
        derived=result.derived,
        outputs={path.name: checksum},
        exit_code=result.exit_code,
        wall_time=time.perf_counter() - start,
    )
    await write_manifest(manifest, config.manifest_path)
    logger.info(f"{config.command}: wrote {path} and {config.manifest_path.name}")
    return result, manifest


def parse_and_run(argv: Optional[Sequence[str]] = None) -> int:
    setup_logger("zbw")
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        config = resolve_config(args)
        result, _ = asyncio.run(execute(config))
    except SingularConfigurationError as e:
        logger.error(f"singular configuration: {e}")
        return EXIT_USAGE
    except UsageError as e:
        logger.error(str(e))
        return EXIT_USAGE
    except ValidationError as e:
        logger.error(f"invalid configuration: {e}")
        return EXIT_USAGE
    except DomainError as e:
        logger.error(f"invalid input: {e}")
        return EXIT_USAGE
    except NumericError as e:
        logger.error(f"numerical failure: {e}")
        return EXIT_FAILED
    except OutputError as e:
        logger.error(str(e))
        return EXIT_FAILED
    return result.exit_code


def main() -> None:
    sys.exit(parse_and_run(sys.argv[1:]))
