from .app import build_parser, main, parse_and_run
from .commands import CommandResult, handlers, register_handler, run_sweep
from .models import RunConfig, RunManifest
from .outputs import write_outputs

__all__ = [
    "CommandResult",
    "RunConfig",
    "RunManifest",
    "build_parser",
    "handlers",
    "main",
    "parse_and_run",
    "register_handler",
    "run_sweep",
    "write_outputs",
]
