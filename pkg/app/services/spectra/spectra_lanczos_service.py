"""
Matrix-free Lanczos for the lowest k eigenpairs.

Every new Krylov vector is reorthogonalized against the whole basis (two Gram-Schmidt
passes). When the Krylov space becomes invariant before k Ritz pairs exist, the
iteration restarts from a fresh seeded vector orthogonal to the basis. Exactly
degenerate multiplicities are therefore only resolved when the invariant space is
exhausted; use dense_spectrum when multiplicities matter.
"""
from typing import List, Optional
import logging
import numpy as np
from scipy import linalg
from app.core.core_config import settings
from app.services.pauli.pauli_string_service import StateVector
from app.services.pauli.pauli_operator_service import OperatorSum, MatrixFreeOperator
from app.services.spectra.spectra_dense_service import EigenResult, degeneracy_groups
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import ConvergenceError, DimensionError, ValidationError

logger = logging.getLogger(__name__)

_BREAKDOWN = 1e-12
_CHECK_EVERY = 5


def _random_vector(rng: np.random.Generator, dim: int) -> np.ndarray:
    vector = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return vector / np.linalg.norm(vector)


def _orthogonalize(vector: np.ndarray, basis: np.ndarray) -> np.ndarray:
    for _ in range(2):
        vector = vector - basis @ (basis.conj().T @ vector)
    return vector


def _tridiagonal(alphas: List[float], betas: List[float]) -> np.ndarray:
    size = len(alphas)
    matrix = np.diag(np.asarray(alphas, dtype=float))
    if size > 1:
        off = np.asarray(betas[:size - 1], dtype=float)
        matrix += np.diag(off, 1) + np.diag(off, -1)
    return matrix


def lanczos_ground(
    h: OperatorSum,
    k: int = 1,
    start: Optional[StateVector] = None,
    seed: Optional[int] = None,
    max_iter: Optional[int] = None,
    tol: Optional[float] = None
) -> EigenResult:
    operator = MatrixFreeOperator(h)
    dim = operator.dim
    if not 1 <= k <= dim:
        raise ValidationError(ServerErrorCode.EIGEN_COUNT_INVALID_53, f"k={k} not in 1..{dim}")
    if start is not None and start.n_sites != h.n_sites:
        raise DimensionError(ServerErrorCode.DIMENSION_MISMATCH_51, f"start vector has {start.n_sites} sites, operator {h.n_sites}")

    rng = np.random.default_rng(settings.LANCZOS_SEED if seed is None else seed)
    limit = min(settings.LANCZOS_MAX_ITER if max_iter is None else max_iter, dim)
    tolerance = settings.LANCZOS_TOL if tol is None else tol

    basis = np.zeros((dim, limit), dtype=np.complex128)
    alphas: List[float] = []
    betas: List[float] = []

    if start is not None and start.norm() > 0.0:
        vector = start.amplitudes / start.norm()
    else:
        vector = _random_vector(rng, dim)

    residuals = np.full(k, np.inf)
    ritz_values = np.zeros(0)
    ritz_vectors = np.zeros((0, 0))
    size = 0
    for j in range(limit):
        basis[:, j] = vector
        w = operator(vector)
        alpha = float(np.vdot(vector, w).real)
        w = w - alpha * vector
        if j > 0 and betas[j - 1] > 0.0:
            w = w - betas[j - 1] * basis[:, j - 1]
        w = _orthogonalize(w, basis[:, :j + 1])
        beta = float(np.linalg.norm(w))
        alphas.append(alpha)
        size = j + 1

        invariant = beta < _BREAKDOWN
        if size >= k and (invariant or size % _CHECK_EVERY == 0 or size == limit):
            ritz_values, ritz_vectors = linalg.eigh(_tridiagonal(alphas, betas))
            residuals = np.abs(beta * ritz_vectors[-1, :k])
            if invariant or residuals.max() <= tolerance:
                break

        if size == limit:
            break
        if invariant:
            # Krylov 空間不變但 Ritz 對不足 k 個：從新的隨機向量重啟
            w = _orthogonalize(_random_vector(rng, dim), basis[:, :size])
            betas.append(0.0)
        else:
            betas.append(beta)
        vector = w / np.linalg.norm(w)

    if ritz_values.shape[0] < k or residuals.max() > tolerance:
        logger.error(f"Lanczos stopped after {size} iterations, residuals {residuals}")
        raise ConvergenceError(ServerErrorCode.LANCZOS_NOT_CONVERGED_53, residuals, size)

    energies = ritz_values[:k]
    vectors = basis[:, :size] @ ritz_vectors[:, :k]
    vectors = vectors / np.linalg.norm(vectors, axis=0)
    logger.debug(f"Lanczos converged in {size} iterations: E0={energies[0]:.12g}")
    return EigenResult(h.n_sites, np.asarray(energies, dtype=float), vectors, degeneracy_groups(energies), method="lanczos", iterations=size)
