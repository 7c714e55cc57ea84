from dataclasses import dataclass, field
from typing import Sequence, Tuple, Union
import logging
import numpy as np
from app.services.pauli.pauli_string_service import PauliString, StateVector, string_action, expectation
from app.services.pauli.pauli_operator_service import check_dense_limit
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import DimensionError, DomainError, ValidationError

logger = logging.getLogger(__name__)

_HERMITIAN_TOL = 1e-10
_TRACE_TOL = 1e-10
_MIN_EIGEN_TOL = -1e-8
# 求 √ρ 時低於此值的本徵值記為 0
_SQRT_EIGEN_CUTOFF = 1e-13

_SIGMA_Y = np.array([[0.0, -1j], [1j, 0.0]], dtype=np.complex128)


# ==================== Types ====================

@dataclass(frozen=True)
class DensityMatrix:
    n_sites: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        data = np.array(self.matrix, dtype=np.complex128)
        dim = 1 << self.n_sites if self.n_sites > 0 else 0
        if self.n_sites <= 0 or data.shape != (dim, dim):
            raise DimensionError(
                ServerErrorCode.DIMENSION_MISMATCH_56,
                f"matrix of shape {data.shape} for {self.n_sites} sites"
            )
        if np.max(np.abs(data - data.conj().T)) > _HERMITIAN_TOL:
            raise DomainError(ServerErrorCode.DENSITY_MATRIX_NOT_HERMITIAN_56, "density matrix is not Hermitian")
        if abs(np.trace(data).real - 1.0) > _TRACE_TOL:
            raise DomainError(ServerErrorCode.DENSITY_MATRIX_TRACE_NOT_ONE_56, f"trace {np.trace(data).real:.3e} != 1")
        if np.linalg.eigvalsh(data).min() < _MIN_EIGEN_TOL:
            raise DomainError(ServerErrorCode.DENSITY_MATRIX_NOT_POSITIVE_56, "density matrix has negative eigenvalues")
        data.flags.writeable = False
        object.__setattr__(self, "matrix", data)

    @classmethod
    def from_state(cls, v: StateVector) -> "DensityMatrix":
        check_dense_limit(v.n_sites, ServerErrorCode.DENSE_LIMIT_EXCEEDED_56)
        return cls(v.n_sites, v.projector())

    @classmethod
    def maximally_mixed(cls, n_sites: int) -> "DensityMatrix":
        dim = 1 << n_sites
        return cls(n_sites, np.eye(dim, dtype=np.complex128) / dim)

    @property
    def dim(self) -> int:
        return 1 << self.n_sites

    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


StateOrDensity = Union[StateVector, DensityMatrix]


def to_density(state: StateOrDensity) -> DensityMatrix:
    """純態提升為投影算符"""
    if isinstance(state, DensityMatrix):
        return state
    return DensityMatrix.from_state(state)


def _matrix_of(state: Union[DensityMatrix, np.ndarray]) -> np.ndarray:
    return state.matrix if isinstance(state, DensityMatrix) else np.asarray(state, dtype=np.complex128)


# ==================== Expectation ====================

def pauli_expectation(state: StateOrDensity, p: PauliString) -> float:
    """Re Tr(rho P)，不構造 P 的矩陣"""
    if isinstance(state, StateVector):
        return expectation(p, state)
    if state.n_sites != p.n_sites:
        raise DimensionError(ServerErrorCode.DIMENSION_MISMATCH_56, f"{state.n_sites} vs {p.n_sites} sites")
    targets, coefficient = string_action(p)
    rows = np.arange(state.dim)
    return float(np.real(np.sum(state.matrix[rows, targets] * coefficient)))


def bloch_vector(state: StateOrDensity, site: int) -> Tuple[float, float, float]:
    _check_site(state.n_sites, site)
    return tuple(
        pauli_expectation(state, PauliString.from_sites(state.n_sites, {site: letter}))
        for letter in ("X", "Y", "Z")
    )


def local_order_P(state: StateOrDensity, site: int) -> float:
    """P = |Tr[rho (σx - iσy)]| = sqrt(<σx>^2 + <σy>^2)"""
    x, y, _ = bloch_vector(state, site)
    return float(np.hypot(x, y))


def _check_site(n_sites: int, site: int) -> None:
    if not 0 <= site < n_sites:
        raise ValidationError(ServerErrorCode.SITE_SET_INVALID_56, f"site {site} not in 0..{n_sites - 1}")


# ==================== Reduced density ====================

def reduced_density(state: StateOrDensity, keep: Sequence[int]) -> DensityMatrix:
    """對補集求偏跡；保留格點按編號升序，最小編號為新的 site 0"""
    n_sites = state.n_sites
    keep_sorted = sorted(int(s) for s in keep)
    if not keep_sorted or len(set(keep_sorted)) != len(keep_sorted) or any(not 0 <= s < n_sites for s in keep_sorted):
        raise ValidationError(ServerErrorCode.SITE_SET_INVALID_56, f"keep={list(keep)} on {n_sites} sites")
    if len(keep_sorted) == n_sites:
        return to_density(state)

    trace_out = [s for s in range(n_sites) if s not in keep_sorted]
    # C 序 reshape 後第 0 個軸是最高位（site n-1）
    keep_axes = [n_sites - 1 - s for s in reversed(keep_sorted)]
    trace_axes = [n_sites - 1 - s for s in reversed(trace_out)]
    d_keep = 1 << len(keep_sorted)

    if isinstance(state, StateVector):
        psi = state.amplitudes.reshape([2] * n_sites)
        psi = np.transpose(psi, keep_axes + trace_axes).reshape(d_keep, -1)
        reduced = psi @ psi.conj().T
    else:
        rho = state.matrix.reshape([2] * (2 * n_sites))
        axes = keep_axes + trace_axes + [n_sites + a for a in keep_axes] + [n_sites + a for a in trace_axes]
        d_trace = 1 << len(trace_out)
        rho = np.transpose(rho, axes).reshape(d_keep, d_trace, d_keep, d_trace)
        reduced = np.einsum("ajbj->ab", rho)
    return DensityMatrix(len(keep_sorted), reduced)


# ==================== Entanglement / fidelity ====================

def _psd_sqrt(matrix: np.ndarray) -> np.ndarray:
    values, vectors = np.linalg.eigh(matrix)
    roots = np.sqrt(np.where(values > _SQRT_EIGEN_CUTOFF, values, 0.0))
    return (vectors * roots) @ vectors.conj().T


def concurrence(rho2: StateOrDensity) -> float:
    """
    C = max(λ1 - λ2 - λ3 - λ4, 0)

    λ 為 √ρ √ρ̃ 的奇異值（降序），即 √ρ ρ̃ √ρ 本徵值的平方根，ρ̃ = (Y⊗Y) ρ* (Y⊗Y)。
    √ρ̃ = (Y⊗Y) √ρ* (Y⊗Y)，只做一次 eigh。
    """
    if rho2.n_sites != 2:
        raise DimensionError(ServerErrorCode.TWO_SITE_STATE_REQUIRED_56, f"got {rho2.n_sites} sites")
    root = _psd_sqrt(to_density(rho2).matrix)
    yy = np.kron(_SIGMA_Y, _SIGMA_Y)
    flipped_root = yy @ root.conj() @ yy
    lambdas = np.linalg.svd(root @ flipped_root, compute_uv=False)
    return float(max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]))


def state_fidelity(a: Union[DensityMatrix, np.ndarray], b: Union[DensityMatrix, np.ndarray]) -> float:
    """|Tr(ab)| / sqrt(Tr(a^2) Tr(b^2))"""
    left = _matrix_of(a)
    right = _matrix_of(b)
    if left.shape != right.shape:
        raise DimensionError(ServerErrorCode.DIMENSION_MISMATCH_56, f"{left.shape} vs {right.shape}")
    purity = np.real(np.trace(left @ left)) * np.real(np.trace(right @ right))
    if purity <= 0.0:
        raise DomainError(ServerErrorCode.ZERO_PURITY_STATE_56)
    return float(abs(np.trace(left @ right)) / np.sqrt(purity))


def pseudo_pure_state(v: StateVector, epsilon: float) -> DensityMatrix:
    """(1-ε) I/2^n + ε|ψ><ψ|"""
    if not 0.0 <= epsilon <= 1.0:
        raise ValidationError(ServerErrorCode.MIXING_WEIGHT_OUT_OF_RANGE_56, f"epsilon={epsilon}")
    check_dense_limit(v.n_sites, ServerErrorCode.DENSE_LIMIT_EXCEEDED_56)
    dim = v.dim
    matrix = (1.0 - epsilon) * np.eye(dim, dtype=np.complex128) / dim + epsilon * v.projector()
    return DensityMatrix(v.n_sites, matrix)


def deviation(measured: Sequence[float], theory: Sequence[float]) -> float:
    """sqrt(Σ(x_m - x_t)^2 / M)"""
    left = np.asarray(measured, dtype=float)
    right = np.asarray(theory, dtype=float)
    if left.shape != right.shape or left.size == 0:
        raise DimensionError(ServerErrorCode.DIMENSION_MISMATCH_56, f"{left.shape} vs {right.shape}")
    return float(np.sqrt(np.mean((left - right) ** 2)))
