from .model import ProfileExtremes, ProfileGrid, ProfileParams
from .solver import (
    ell_of_amplitude,
    integrate_profile,
    normalize_profile,
    profile_derivatives,
    profile_extremes,
    profile_radicand,
    scaled_radicand,
    shape_map,
    small_ell_profile,
    solve_f,
)

__all__ = [
    "ProfileExtremes",
    "ProfileGrid",
    "ProfileParams",
    "ell_of_amplitude",
    "integrate_profile",
    "normalize_profile",
    "profile_derivatives",
    "profile_extremes",
    "profile_radicand",
    "scaled_radicand",
    "shape_map",
    "small_ell_profile",
    "solve_f",
]
