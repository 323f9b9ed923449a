from .errors import (
    DomainError,
    IntegrationError,
    NumericError,
    OutputError,
    QuadratureError,
    SingularConfigurationError,
    TruncationError,
    ZbwError,
)
from .kinematics import DirectionSpec, PhysicalParams, direction_gamma, lorentz_gamma, reduced_compton
from .profile import (
    ProfileExtremes,
    ProfileGrid,
    ProfileParams,
    ell_of_amplitude,
    integrate_profile,
    normalize_profile,
    profile_derivatives,
    profile_extremes,
    small_ell_profile,
    solve_f,
)
from .field import (
    EnergyBudget,
    FieldSample,
    ResidualReport,
    energy_budget,
    field_samples,
    hamiltonian,
    harmonic_potential,
    kg_split_residual,
    quantum_potential,
)
from .dynamics import (
    HarmonicSpec,
    TauState,
    TauTrajectory,
    evolve_state,
    harmonic_spec,
    harmonic_trajectory,
    integrate_tau,
    period_quadrature,
    standard_zbw,
    tau_acceleration,
    turning_point,
    two_time_position,
    uncertainty_products,
)
from .nonrel import nogo_checks, nonrel_limit_check, nonrel_profile, nonrel_split_residuals

__version__ = "0.1.0"
__author__ = "hlfzsi"

__all__ = [
    "DirectionSpec",
    "DomainError",
    "EnergyBudget",
    "FieldSample",
    "HarmonicSpec",
    "IntegrationError",
    "NumericError",
    "OutputError",
    "PhysicalParams",
    "ProfileExtremes",
    "ProfileGrid",
    "ProfileParams",
    "QuadratureError",
    "ResidualReport",
    "SingularConfigurationError",
    "TauState",
    "TauTrajectory",
    "TruncationError",
    "ZbwError",
    "direction_gamma",
    "ell_of_amplitude",
    "energy_budget",
    "evolve_state",
    "field_samples",
    "hamiltonian",
    "harmonic_potential",
    "harmonic_spec",
    "harmonic_trajectory",
    "integrate_profile",
    "integrate_tau",
    "kg_split_residual",
    "lorentz_gamma",
    "nogo_checks",
    "nonrel_limit_check",
    "nonrel_profile",
    "nonrel_split_residuals",
    "normalize_profile",
    "period_quadrature",
    "profile_derivatives",
    "profile_extremes",
    "reduced_compton",
    "small_ell_profile",
    "solve_f",
    "standard_zbw",
    "tau_acceleration",
    "turning_point",
    "two_time_position",
    "uncertainty_products",
]
