from .harmonic import (
    harmonic_spec,
    harmonic_trajectory,
    standard_zbw,
    two_time_position,
    uncertainty_products,
)
from .integrator import (
    COMPOSITIONS,
    TauForce,
    evolve_state,
    integrate_tau,
    period_quadrature,
    tau_acceleration,
    turning_point,
)
from .model import HarmonicSpec, TauState, TauTrajectory, TurningPoint, UncertaintyProducts

__all__ = [
    "COMPOSITIONS",
    "HarmonicSpec",
    "TauForce",
    "TauState",
    "TauTrajectory",
    "TurningPoint",
    "UncertaintyProducts",
    "evolve_state",
    "harmonic_spec",
    "harmonic_trajectory",
    "integrate_tau",
    "period_quadrature",
    "standard_zbw",
    "tau_acceleration",
    "turning_point",
    "two_time_position",
    "uncertainty_products",
]
