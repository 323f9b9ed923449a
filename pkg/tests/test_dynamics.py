import math

import numpy as np
import pytest

from bohmian_zbw import (
    DomainError,
    IntegrationError,
    PhysicalParams,
    ProfileGrid,
    ProfileParams,
    evolve_state,
    harmonic_spec,
    harmonic_trajectory,
    integrate_profile,
    integrate_tau,
    period_quadrature,
    profile_extremes,
    standard_zbw,
    tau_acceleration,
    turning_point,
    two_time_position,
    uncertainty_products,
)
from bohmian_zbw.dynamics import TauForce


class TestTauForce:
    def test_zero_at_peak(self, grid_canon, phys_rest):
        assert tau_acceleration(0.0, grid_canon, phys_rest) == 0.0

    def test_restoring(self, grid_canon, phys_rest):
        ell = np.array([-0.3, -0.1, 0.1, 0.3])
        acc = tau_acceleration(ell, grid_canon, phys_rest)
        assert np.all(np.sign(acc) == -np.sign(ell))

    @pytest.mark.parametrize("ell, rel", [(0.01, 1e-2), (0.04, 1e-2), (-0.04, 1e-2), (0.05, 1.5e-2)])
    def test_harmonic_near_peak(self, grid_canon, phys_rest, params_canon, ell, rel):
        omega = harmonic_spec(params_canon, phys_rest).omega
        assert tau_acceleration(ell, grid_canon, phys_rest) == pytest.approx(-omega ** 2 * ell, rel=rel)

    def test_outside_grid(self, grid_canon, phys_rest):
        with pytest.raises(DomainError):
            tau_acceleration(grid_canon.ell_max * 1.1, grid_canon, phys_rest)

    def test_potential_curvature_matches_harmonic(self, grid_canon, phys_rest, f_canon):
        force = TauForce(grid_canon, phys_rest)
        h = 1e-3
        curvature = (force.potential(h) - 2.0 * force.potential(0.0) + force.potential(-h)) / h ** 2
        assert curvature == pytest.approx(2.0 * f_canon ** 2 * (f_canon + 2.0), rel=1e-4)

    def test_potential_matches_profile(self, grid_canon, phys_rest, params_canon):
        force = TauForce(grid_canon, phys_rest)
        ell = grid_canon.ell[::400]
        np.testing.assert_allclose(force.potential(ell), params_canon.c1 / grid_canon.R[::400] ** 2, rtol=1e-12)

    def test_grid_without_u(self, grid_canon, phys_rest):
        bare = ProfileGrid(ell=grid_canon.ell, R=grid_canon.R, Rdot=grid_canon.Rdot, Rddot=grid_canon.Rddot,
                           Rdddot=grid_canon.Rdddot, params=grid_canon.params, r_floor=grid_canon.r_floor)
        assert bare.u is None
        # 在网格节点上单调插值精确还原 R
        ell = grid_canon.ell[[400, 1200, 2400, 3600]]
        ell = np.concatenate([ell, -ell])
        smooth, fallback = TauForce(grid_canon, phys_rest), TauForce(bare, phys_rest)
        np.testing.assert_allclose(fallback.potential(ell), smooth.potential(ell), rtol=1e-12)
        np.testing.assert_allclose(fallback.acceleration(ell), smooth.acceleration(ell), rtol=1e-9)
        assert fallback.acceleration(0.0) == 0.0


class TestEvolveState:
    def test_time_reversal(self, grid_canon, phys_rest, params_canon):
        dtau = harmonic_spec(params_canon, phys_rest).period / 2000
        forward = evolve_state(0.0, 1.0, grid_canon, phys_rest, dtau, 2000)
        assert forward.tau == pytest.approx(2000 * dtau)
        back = evolve_state(forward.ell, forward.v_i, grid_canon, phys_rest, -dtau, 2000)
        assert abs(back.ell) <= 1e-8
        assert abs(back.v_i - 1.0) <= 1e-8

    def test_energy_conserved(self, grid_canon, phys_rest, params_canon, f_canon):
        dtau = harmonic_spec(params_canon, phys_rest).period / 2000
        state = evolve_state(0.0, 1.0, grid_canon, phys_rest, dtau, 1000)
        assert state.E_Q == pytest.approx(f_canon + 0.5, rel=1e-7)

    def test_rejects_zero_step(self, grid_canon, phys_rest):
        with pytest.raises(DomainError):
            evolve_state(0.0, 1.0, grid_canon, phys_rest, 0.0, 10)

    def test_unknown_scheme(self, grid_canon, phys_rest):
        with pytest.raises(DomainError):
            evolve_state(0.0, 1.0, grid_canon, phys_rest, 1e-3, 10, scheme="rk4")


class TestTurningPoint:
    def test_light_speed_launch(self, params_canon, phys_rest):
        turn = turning_point(params_canon, phys_rest, 1.0)
        assert turn.x_turn == pytest.approx(profile_extremes(params_canon).r_m_ratio, rel=1e-14)
        assert turn.ell_turn == pytest.approx(0.406, abs=2e-3)

    def test_potential_at_turn_equals_energy(self, params_canon, phys_rest, f_canon):
        turn = turning_point(params_canon, phys_rest, 0.5)
        assert params_canon.c1 / turn.R_turn ** 2 == pytest.approx(f_canon + 0.125, rel=1e-12)

    @pytest.mark.parametrize("v", [0.0, 1.5])
    def test_invalid_speed(self, params_canon, phys_rest, v):
        with pytest.raises(DomainError):
            turning_point(params_canon, phys_rest, v)


class TestPeriodQuadrature:
    def test_harmonic_limit(self, params_canon, phys_rest):
        T = period_quadrature(params_canon, phys_rest, 1e-4)
        assert T == pytest.approx(harmonic_spec(params_canon, phys_rest).period, rel=1e-6)

    def test_period_shortens_with_amplitude(self, params_canon, phys_rest):
        # V_Q ~ 1/R² 比谐振势更陡
        T_h = harmonic_spec(params_canon, phys_rest).period
        periods = [period_quadrature(params_canon, phys_rest, v) for v in (0.25, 0.5, 1.0)]
        assert T_h > periods[0] > periods[1] > periods[2]
        assert periods[0] == pytest.approx(3.0666, abs=1e-3)
        assert periods[2] == pytest.approx(2.3192, abs=1e-3)


@pytest.mark.slow
class TestIntegrateTau:
    def test_energy_drift(self, trajectory_canon):
        assert trajectory_canon.energy_drift <= 1e-8
        assert float(np.max(trajectory_canon.drift)) == trajectory_canon.energy_drift
        assert trajectory_canon.scheme == "leapfrog4"

    def test_turning_amplitude(self, trajectory_canon, f_canon):
        assert trajectory_canon.ell_turn == pytest.approx(0.406, abs=2e-3)
        assert float(np.max(trajectory_canon.V_Q)) == pytest.approx(f_canon + 0.5, rel=1e-5)

    def test_period_matches_quadrature(self, trajectory_canon, params_canon, phys_rest):
        T = period_quadrature(params_canon, phys_rest, 1.0)
        assert trajectory_canon.period_estimate == pytest.approx(T, rel=1e-6)

    def test_speed_bounded_by_launch(self, trajectory_canon):
        # 从势能最低点 ell = 0 出发, |v_i| 不超过 v_i(0)
        assert float(np.max(np.abs(trajectory_canon.v_i))) <= trajectory_canon.v_i0 * (1.0 + 1e-7)
        assert float(np.min(trajectory_canon.v_i)) < -0.99 * trajectory_canon.v_i0

    def test_states(self, trajectory_canon):
        states = trajectory_canon.states
        assert len(states) == len(trajectory_canon)
        first, last = states[0], states[-1]
        assert (first.tau, first.ell, first.v_i) == (0.0, 0.0, 1.0)
        assert last.tau == float(trajectory_canon.tau[-1])
        assert last.E_Q == float(trajectory_canon.E_Q[-1])
        assert all(abs(state.v_i) <= 1.0 + 1e-7 for state in states[::50])

    def test_period_is_stable(self, trajectory_canon):
        assert trajectory_canon.period_first == pytest.approx(trajectory_canon.period_last, rel=1e-6)

    def test_columns(self, trajectory_canon):
        columns = trajectory_canon.columns()
        assert list(columns) == ["tau", "ell", "v_i", "V_Q", "E_Q", "drift"]
        assert all(column.size == len(trajectory_canon) for column in columns.values())
        assert trajectory_canon.tau[0] == 0.0
        assert trajectory_canon.v_i[0] == 1.0

    def test_harmonic_limit(self, grid_canon, phys_rest, params_canon):
        trajectory = integrate_tau(grid_canon, phys_rest, v_i0=0.01, n_periods=2)
        spec = harmonic_spec(params_canon, phys_rest, v_max=0.01)
        assert trajectory.period_estimate == pytest.approx(spec.period, rel=1e-3)
        assert trajectory.ell_turn == pytest.approx(spec.A, rel=1e-3)
        assert trajectory.period_estimate == pytest.approx(
            period_quadrature(params_canon, phys_rest, 0.01), rel=1e-6)

    def test_second_order_scheme_drifts(self, grid_canon, phys_rest):
        with pytest.raises(IntegrationError) as info:
            integrate_tau(grid_canon, phys_rest, v_i0=1.0, n_periods=1, scheme="leapfrog2")
        assert info.value.drift > 1e-8

    def test_second_order_scheme_with_loose_tolerance(self, grid_canon, phys_rest, params_canon):
        trajectory = integrate_tau(grid_canon, phys_rest, v_i0=1.0, n_periods=2, scheme="leapfrog2",
                                   drift_tolerance=1e-4)
        T = period_quadrature(params_canon, phys_rest, 1.0)
        assert trajectory.period_estimate == pytest.approx(T, rel=1e-4)


class TestIntegrateTauArguments:
    @pytest.mark.parametrize("v", [0.0, -0.5, 1.5])
    def test_invalid_speed(self, grid_canon, phys_rest, v):
        with pytest.raises(DomainError):
            integrate_tau(grid_canon, phys_rest, v_i0=v)

    def test_turning_point_beyond_grid(self, params_canon, phys_rest):
        grid = integrate_profile(params_canon, r_floor=0.9, n_points=401)
        with pytest.raises(DomainError):
            integrate_tau(grid, phys_rest, v_i0=1.0)


class TestHarmonic:
    def test_light_speed_spec(self, params_canon, phys_rest):
        spec = harmonic_spec(params_canon, phys_rest)
        assert spec.omega == pytest.approx(2.0, rel=1e-12)
        assert spec.A == pytest.approx(0.5, rel=1e-12)
        assert spec.v_max == pytest.approx(1.0, rel=1e-15)

    def test_trajectory(self):
        spec = standard_zbw(PhysicalParams(v_o=1e-9))
        ell, v_i = harmonic_trajectory(0.0, spec)
        assert ell == 0.0
        assert v_i == pytest.approx(1.0)
        ell, v_i = harmonic_trajectory(math.pi / (2.0 * spec.omega), spec)
        assert ell == pytest.approx(-spec.A)
        assert v_i == pytest.approx(0.0, abs=1e-15)

    def test_standard_zbw_at_rest(self, f_canon):
        spec = standard_zbw(PhysicalParams(v_o=1e-9))
        assert spec.A == pytest.approx(0.5, rel=1e-14)
        assert spec.omega == pytest.approx(2.0, rel=1e-14)
        assert spec.f == pytest.approx(f_canon, rel=1e-12)

    def test_standard_zbw_moving(self):
        phys = PhysicalParams(v_o=math.sqrt(3.0) / 2.0)
        spec = standard_zbw(phys)
        assert spec.A == pytest.approx(0.25, rel=1e-12)
        assert spec.omega == pytest.approx(4.0, rel=1e-12)
        assert spec.f == pytest.approx(0.4516, abs=1e-3)

    def test_model_reproduces_standard_frequency(self):
        phys = PhysicalParams(v_o=0.6)
        spec = standard_zbw(phys)
        params = ProfileParams.from_physics(spec.f, phys)
        assert harmonic_spec(params, phys).omega == pytest.approx(spec.omega, rel=1e-10)

    def test_amplitude_ordering(self, trajectory_canon, params_canon, phys_rest):
        A = harmonic_spec(params_canon, phys_rest).A
        assert trajectory_canon.ell_turn < A
        assert trajectory_canon.ell_turn > 0.8 * A


class TestTwoTimePosition:
    def test_frozen_tau(self):
        phys = PhysicalParams(v_o=0.6)
        spec = standard_zbw(phys)
        t = np.linspace(0.0, 5.0, 11)
        np.testing.assert_allclose(two_time_position(t, 0.0, phys, spec, x0=1.0), 1.0 + 0.6 * t, rtol=1e-15)

    def test_quarter_period(self):
        phys = PhysicalParams(v_o=0.6)
        spec = standard_zbw(phys)
        x = two_time_position(2.0, math.pi / (2.0 * spec.omega), phys, spec)
        assert x == pytest.approx(1.2 + spec.A, rel=1e-12)

    def test_perpendicular_direction_has_no_drift(self):
        phys = PhysicalParams(v_o=0.6, theta=math.pi / 2)
        spec = standard_zbw(phys)
        assert two_time_position(3.0, 0.0, phys, spec) == 0.0

    def test_bounded_by_turning_amplitude(self, trajectory_canon, phys_rest):
        tau = 0.5 * (trajectory_canon.tau[1:] + trajectory_canon.tau[:-1])[::7]
        x = two_time_position(0.0, tau, phys_rest, trajectory_canon)
        assert float(np.max(np.abs(x))) <= trajectory_canon.ell_turn + 1e-6

    def test_outside_span(self, trajectory_canon, phys_rest):
        with pytest.raises(DomainError):
            two_time_position(0.0, trajectory_canon.tau[-1] + 1.0, phys_rest, trajectory_canon)


class TestUncertainty:
    def test_canonical(self, params_canon, phys_rest):
        products = uncertainty_products(params_canon, phys_rest)
        assert products.dx_dp == pytest.approx(0.5, rel=1e-12)
        assert products.dE_dt == pytest.approx(math.pi / 4.0, rel=1e-12)

    def test_inverse_in_gamma_along_motion(self, params_canon):
        slow = uncertainty_products(params_canon, PhysicalParams(v_o=0.6))
        fast = uncertainty_products(params_canon, PhysicalParams(v_o=math.sqrt(0.84)))
        assert fast.gamma_o == pytest.approx(2.5, rel=1e-12)
        assert fast.dx_dp / slow.dx_dp == pytest.approx(0.5, rel=1e-12)
        assert fast.dE_dt / slow.dE_dt == pytest.approx(0.5, rel=1e-12)

    def test_constant_across_motion(self, params_canon, phys_rest):
        rest = uncertainty_products(params_canon, phys_rest)
        for v in np.linspace(0.1, 0.9, 9):
            products = uncertainty_products(params_canon, PhysicalParams(v_o=float(v)), theta=math.pi / 2)
            assert products.gamma_s == 1.0
            assert products.dx_dp == pytest.approx(rest.dx_dp, rel=1e-12)
            assert products.dE_dt == pytest.approx(rest.dE_dt, rel=1e-12)

    def test_direction_override(self, params_canon):
        phys = PhysicalParams(v_o=0.6)
        assert uncertainty_products(params_canon, phys, theta=0.0) == uncertainty_products(params_canon, phys)
