import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohmian_zbw import (
    DomainError,
    PhysicalParams,
    ProfileGrid,
    energy_budget,
    field_samples,
    hamiltonian,
    harmonic_potential,
    integrate_profile,
    kg_split_residual,
    profile_extremes,
    quantum_potential,
)
from bohmian_zbw.field import beta_factor, column_consistency, hamiltonian_from_beta
from bohmian_zbw.utils.serialize import dumps_json, loads_json


@pytest.fixture(scope="module")
def phys_moving() -> PhysicalParams:
    """gamma_o = 2"""
    return PhysicalParams(v_o=math.sqrt(3.0) / 2.0)


@pytest.fixture(scope="module")
def cosine_grid(params_canon) -> ProfileGrid:
    ell = np.linspace(0.0, 1.2, 200)
    return ProfileGrid(ell=ell, R=np.cos(ell), Rdot=-np.sin(ell), Rddot=-np.cos(ell),
                       Rdddot=np.sin(ell), params=params_canon, r_floor=float(np.cos(1.2)))


class TestPotential:
    def test_minimum_at_peak(self, params_canon, phys_rest, f_canon):
        assert quantum_potential(1.0, params_canon, phys_rest) == pytest.approx(f_canon, rel=1e-14)

    def test_value_at_turning_amplitude(self, params_canon, phys_rest, f_canon):
        R_m = profile_extremes(params_canon).r_m_ratio
        assert quantum_potential(R_m, params_canon, phys_rest) == pytest.approx(f_canon + 0.5, rel=1e-12)

    def test_scales_with_gamma(self, params_canon, phys_rest, phys_moving):
        rest = quantum_potential(0.8, params_canon, phys_rest)
        assert quantum_potential(0.8, params_canon, phys_moving) == pytest.approx(2.0 * rest, rel=1e-12)

    def test_hamiltonian_offset(self, params_canon, phys_rest):
        R = np.linspace(0.1, 1.0, 10)
        np.testing.assert_allclose(
            hamiltonian(R, params_canon, phys_rest) - quantum_potential(R, params_canon, phys_rest),
            1.0, rtol=1e-12)

    @pytest.mark.parametrize("R", [0.0, -1.0, 1.5])
    def test_out_of_domain(self, params_canon, phys_rest, R):
        with pytest.raises(DomainError):
            quantum_potential(R, params_canon, phys_rest)

    @settings(max_examples=100, deadline=None)
    @given(R=st.floats(0.05, 1.0))
    def test_two_hamiltonian_forms_agree(self, params_canon, phys_rest, R):
        assert hamiltonian_from_beta(R, params_canon, phys_rest) == pytest.approx(
            hamiltonian(R, params_canon, phys_rest), rel=1e-12)
        assert beta_factor(R, params_canon) >= 1.0

    def test_harmonic_potential(self, params_canon, phys_rest, grid_canon, f_canon):
        assert harmonic_potential(0.0, params_canon, phys_rest) == pytest.approx(f_canon, rel=1e-15)
        exact = quantum_potential(grid_canon.amplitude(0.1), params_canon, phys_rest)
        approx = harmonic_potential(0.1, params_canon, phys_rest)
        assert approx == pytest.approx(f_canon * (1.0 + f_canon * (f_canon + 2.0) * 0.01), rel=1e-14)
        assert abs(approx - exact) / exact < 1e-2


class TestEnergyBudget:
    def test_light_speed_launch(self, params_canon, phys_rest, f_canon):
        budget = energy_budget(params_canon, phys_rest, 1.0)
        assert budget.V_Qm == pytest.approx(f_canon, rel=1e-14)
        assert budget.E_Q == pytest.approx(f_canon + 0.5, rel=1e-14)
        assert budget.V_QM == budget.E_Q
        assert budget.H_min == pytest.approx(1.0 + f_canon, rel=1e-14)
        assert budget.H_max == pytest.approx(1.5 + f_canon, rel=1e-14)
        assert budget.H_amplitude == pytest.approx(0.5, rel=1e-12)
        assert budget.E_full == pytest.approx(1.5 + f_canon, rel=1e-14)

    def test_half_light_speed(self, params_canon, phys_rest, f_canon):
        budget = energy_budget(params_canon, phys_rest, 0.5)
        assert budget.E_Q == pytest.approx(f_canon + 0.125, rel=1e-14)
        assert budget.V_QM == budget.E_Q
        assert budget.H_amplitude == pytest.approx(0.125, rel=1e-12)

    def test_amplitude_scales_with_gamma(self, params_canon, phys_moving):
        assert energy_budget(params_canon, phys_moving, 1.0).H_amplitude == pytest.approx(1.0, rel=1e-12)

    def test_external_potential(self, params_canon, phys_rest):
        budget = energy_budget(params_canon, phys_rest, 1.0, V=0.25)
        assert budget.E_NQ == pytest.approx(1.25, rel=1e-14)
        assert budget.E_full == pytest.approx(budget.E_NQ + budget.E_Q, rel=1e-15)
        assert budget.H_max == energy_budget(params_canon, phys_rest, 1.0).H_max

    @pytest.mark.parametrize("v", [0.0, -0.1, 1.01])
    def test_invalid_launch_speed(self, params_canon, phys_rest, v):
        with pytest.raises(DomainError):
            energy_budget(params_canon, phys_rest, v)


class TestFieldSamples:
    def test_hamiltonian_equals_root_beta(self, grid_canon, phys_rest):
        samples = field_samples(grid_canon, phys_rest)
        assert len(samples) == grid_canon.size
        np.testing.assert_allclose(samples.H, phys_rest.rest_energy * np.sqrt(samples.beta), rtol=1e-12)

    def test_sample(self, grid_canon, phys_moving):
        sample = field_samples(grid_canon, phys_moving).sample(0)
        assert sample.ell == 0.0
        assert sample.S_phase_rate == (phys_moving.momentum, sample.H)

    def test_columns(self, grid_canon, phys_rest):
        columns = field_samples(grid_canon, phys_rest).columns()
        assert list(columns) == ["ell", "R", "V_Q", "H", "beta"]


class TestKgSplitResidual:
    def test_integrated_profile_is_certified(self, grid_canon, phys_rest):
        report = kg_split_residual(grid_canon, phys_rest)
        assert report.certified
        assert report.max_residual_a < 1e-6
        assert report.max_residual_b < 1e-6
        assert report.max_residual_c < 1e-6
        assert report.n_samples == grid_canon.size
        assert len(report.residual_a) == grid_canon.size
        assert len(report.residual_c) == grid_canon.size - 1

    def test_guidance(self, grid_canon):
        report = kg_split_residual(grid_canon, PhysicalParams(v_o=0.6))
        assert report.max_guidance_residual < 1e-9

    def test_scaled_profile_is_rejected(self, grid_canon, phys_rest):
        report = kg_split_residual(grid_canon.scaled(1.1), phys_rest)
        assert not report.certified
        assert report.max_residual_a > 1e-2
        # 峰值处 1 + f/1.21 对 1 + f
        assert report.residual_a[0] == pytest.approx(0.146, abs=2e-3)
        assert report.max_residual_b < 1e-6
        assert report.max_residual_c < 1e-6

    def test_cosine_profile_is_rejected(self, cosine_grid, phys_rest):
        report = kg_split_residual(cosine_grid, phys_rest)
        assert not report.certified
        assert report.max_residual_a > 1e-2
        assert report.max_residual_c < 1e-9

    def test_custom_threshold(self, grid_canon, phys_rest):
        report = kg_split_residual(grid_canon.scaled(1.1), phys_rest, threshold=1e3)
        assert report.threshold == 1e3
        assert report.certified

    def test_json_omits_pointwise_columns(self, grid_canon, phys_rest):
        document = loads_json(dumps_json(kg_split_residual(grid_canon, phys_rest)))
        assert document["certified"] is True
        assert "residual_a" not in document
        assert {"n_samples", "max_residual_a", "max_residual_b", "max_residual_c"} <= set(document)
        assert "residual_c" not in document


def _with_columns(grid: ProfileGrid, **columns) -> ProfileGrid:
    fields = {"ell": grid.ell, "R": grid.R, "Rdot": grid.Rdot, "Rddot": grid.Rddot, "Rdddot": grid.Rdddot}
    fields.update(columns)
    return ProfileGrid(**fields, params=grid.params, r_floor=grid.r_floor)


class TestColumnConsistency:
    def test_stretched_ell_is_rejected(self, grid_canon, phys_rest):
        grid = _with_columns(grid_canon, ell=grid_canon.ell * 1.5)
        report = kg_split_residual(grid, phys_rest)
        assert not report.certified
        # 第一积分与常微分方程只看导数列, 仍然成立
        assert report.max_residual_a < 1e-6
        assert report.max_residual_b < 1e-6
        assert report.max_residual_c == pytest.approx(1.0 / 3.0, rel=1e-2)

    def test_wrong_third_derivative(self, grid_canon, phys_rest):
        grid = _with_columns(grid_canon, Rdddot=np.zeros(grid_canon.size))
        assert kg_split_residual(grid, phys_rest).max_residual_c > 1e-5

    def test_coarse_grid_is_not_certified(self, params_canon, phys_rest):
        grid = integrate_profile(params_canon, n_points=64)
        report = kg_split_residual(grid, phys_rest)
        assert report.max_residual_a < 1e-6
        assert report.max_residual_c > 1e-6
        assert not report.certified

    def test_per_interval(self, grid_canon):
        residual = column_consistency(grid_canon)
        assert residual.shape == (grid_canon.size - 1,)
        assert float(np.max(residual)) < 1e-6

    def test_rescaled_grid_stays_consistent(self, grid_canon):
        assert float(np.max(column_consistency(grid_canon.rescaled(0.7)))) < 1e-6
