from .model import LimitVerdict, MassRow, NonRelProfile, NonRelResidualReport, NoGoReport
from .verify import nogo_checks, nonrel_limit_check, nonrel_profile, nonrel_split_residuals

__all__ = [
    "LimitVerdict",
    "MassRow",
    "NoGoReport",
    "NonRelProfile",
    "NonRelResidualReport",
    "nogo_checks",
    "nonrel_limit_check",
    "nonrel_profile",
    "nonrel_split_residuals",
]
