import pytest

from bohmian_zbw import PhysicalParams, ProfileParams, integrate_profile, integrate_tau, solve_f


@pytest.fixture(scope="session")
def f_canon() -> float:
    """f sqrt(2(f+2)) = 2, 即 gamma_o = 1 时与标准 Zitterbewegung 匹配的形状常数"""
    return solve_f(2.0)


@pytest.fixture(scope="session")
def phys_rest() -> PhysicalParams:
    """m = hbar = c = 1, v_o 取极小值使 gamma_o 在双精度下等于 1"""
    return PhysicalParams(v_o=1e-9)


@pytest.fixture(scope="session")
def params_canon(f_canon) -> ProfileParams:
    return ProfileParams(f=f_canon, R_M=1.0, lambda_r=1.0)


@pytest.fixture(scope="session")
def grid_canon(params_canon):
    return integrate_profile(params_canon)


@pytest.fixture(scope="session")
def trajectory_canon(grid_canon, phys_rest):
    return integrate_tau(grid_canon, phys_rest, v_i0=1.0, n_periods=10)
