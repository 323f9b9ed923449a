"""量子势、哈密顿量与能量账目。所有能量以 m gamma_o c² 为自然尺度"""
import numpy as np

from ..errors import DomainError
from ..kinematics import PhysicalParams
from ..profile import ProfileGrid, ProfileParams, profile_derivatives
from ..profile.model import ArrayLike
from .model import EnergyBudget, FieldColumns


def _amplitude(R: ArrayLike, params: ProfileParams) -> np.ndarray:
    R = np.asarray(R, dtype=float)
    if np.any(R <= 0.0) or np.any(R > params.R_M * (1.0 + 1e-12)):
        raise DomainError(f"amplitude must lie in (0, R_M = {params.R_M}]")
    return R


def _out(value: np.ndarray) -> ArrayLike:
    return float(value) if np.ndim(value) == 0 else value


def quantum_potential(R: ArrayLike, params: ProfileParams, phys: PhysicalParams) -> ArrayLike:
    """V_Q = m gamma_o c² f R_M² / R², 峰值处取最小值 m gamma_o c² f"""
    R = _amplitude(R, params)
    return _out(phys.rest_energy * params.c1 / (R * R))


def hamiltonian(R: ArrayLike, params: ProfileParams, phys: PhysicalParams) -> ArrayLike:
    """H = m gamma_o c² (1 + c1/R²)"""
    R = _amplitude(R, params)
    return _out(phys.rest_energy * (1.0 + params.c1 / (R * R)))


def beta_factor(R: float, params: ProfileParams) -> float:
    """beta = 1 - lambda_r² Rddot / R, Rddot 取闭式"""
    _, rddot = profile_derivatives(R, 1, params)
    return 1.0 - params.lambda_r ** 2 * rddot / R


def hamiltonian_from_beta(R: float, params: ProfileParams, phys: PhysicalParams) -> float:
    """H = m gamma_o c² sqrt(beta), 与 hamiltonian 的另一种写法"""
    return phys.rest_energy * float(np.sqrt(beta_factor(R, params)))


def harmonic_potential(ell: ArrayLike, params: ProfileParams, phys: PhysicalParams) -> ArrayLike:
    """
    峰值附近的谐振近似 V_Q ≈ m gamma_o c² f (1 + f(f+2) ell² / lambda_r²)。

    只在 |ell| 远小于 lambda_r 时可信。
    """
    ell = np.asarray(ell, dtype=float)
    f = params.f
    return _out(phys.rest_energy * f * (1.0 + f * (f + 2.0) * ell ** 2 / params.lambda_r ** 2))


def energy_budget(params: ProfileParams, phys: PhysicalParams, v_i0: float, V: float = 0.0) -> EnergyBudget:
    """
    以 ell = 0 处速度 v_i0 发射时的能量账目。

    :param v_i0: 0 < v_i0 <= c, 内禀运动按非相对论动能 m gamma_o v² / 2 计
    :param V: 常数外势, 只进入 E_NQ 与 E_full
    """
    if not 0.0 < v_i0 <= phys.c:
        raise DomainError(f"v_i0 must lie in (0, c], got {v_i0}")
    rest = phys.rest_energy
    kinetic = 0.5 * phys.m * phys.gamma_o * v_i0 ** 2
    V_Qm = rest * params.f
    E_Q = V_Qm + kinetic
    E_NQ = rest + V
    # V_QM 取实际折返点处的势能, 只有 v_i0 = c 时才等于 rest (f + 1/2)
    return EnergyBudget(
        v_i0=v_i0, V=V, E_Q=E_Q, E_NQ=E_NQ, V_Qm=V_Qm, V_QM=E_Q,
        H_min=rest + V_Qm, H_max=rest + E_Q, E_full=E_NQ + E_Q,
    )


def field_samples(grid: ProfileGrid, phys: PhysicalParams) -> FieldColumns:
    params = grid.params
    R = grid.R
    beta = 1.0 - params.lambda_r ** 2 * grid.Rddot / R
    V_Q = phys.rest_energy * params.c1 / (R * R)
    return FieldColumns(
        ell=grid.ell, R=R, Rdot=grid.Rdot, Rddot=grid.Rddot, beta=beta, V_Q=V_Q,
        H=phys.rest_energy + V_Q, p_o=phys.momentum,
    )
