from .model import EnergyBudget, FieldColumns, FieldSample, ResidualReport
from .potential import (
    beta_factor,
    energy_budget,
    field_samples,
    hamiltonian,
    hamiltonian_from_beta,
    harmonic_potential,
    quantum_potential,
)
from .residual import column_consistency, kg_split_residual

__all__ = [
    "EnergyBudget",
    "FieldColumns",
    "FieldSample",
    "ResidualReport",
    "beta_factor",
    "column_consistency",
    "energy_budget",
    "field_samples",
    "hamiltonian",
    "hamiltonian_from_beta",
    "harmonic_potential",
    "kg_split_residual",
    "quantum_potential",
]
