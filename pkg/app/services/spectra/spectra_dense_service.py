from dataclasses import dataclass, field
from typing import List, Optional
import logging
import numpy as np
from scipy import linalg
from app.core.core_config import settings
from app.services.pauli.pauli_string_service import StateVector
from app.services.pauli.pauli_operator_service import OperatorSum, MatrixFreeOperator, check_dense_limit, materialize
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import ValidationError

logger = logging.getLogger(__name__)


# ==================== Types ====================

@dataclass(frozen=True)
class EigenResult:
    """能量升序；vectors 的第 i 列對應 energies[i]"""
    n_sites: int
    energies: np.ndarray
    vectors: np.ndarray = field(repr=False)
    degeneracy_groups: List[List[int]]
    method: str = "dense"
    iterations: int = 0

    @property
    def ground_energy(self) -> float:
        return float(self.energies[0])

    @property
    def ground_group(self) -> List[int]:
        return self.degeneracy_groups[0]

    def state(self, index: int) -> StateVector:
        return StateVector(self.n_sites, self.vectors[:, index])

    @property
    def states(self) -> List[StateVector]:
        return [self.state(i) for i in range(len(self.energies))]

    def residuals(self, h: OperatorSum) -> np.ndarray:
        """||H v - E v|| 逐本徵對"""
        operator = MatrixFreeOperator(h)
        return np.array([
            np.linalg.norm(operator(self.vectors[:, i]) - self.energies[i] * self.vectors[:, i])
            for i in range(len(self.energies))
        ])


def degeneracy_groups(energies: np.ndarray, tol: Optional[float] = None) -> List[List[int]]:
    """相鄰能級差 < deg_tol 的歸為同一組（energies 已升序）"""
    if len(energies) == 0:
        return []
    deg_tol = settings.deg_tol(float(energies[0])) if tol is None else tol
    groups: List[List[int]] = [[0]]
    for index in range(1, len(energies)):
        if abs(energies[index] - energies[groups[-1][-1]]) < deg_tol:
            groups[-1].append(index)
        else:
            groups.append([index])
    return groups


# ==================== Dense ====================

def hamiltonian_matrix(h: OperatorSum) -> np.ndarray:
    """實對稱時返回實矩陣，eigh 更快"""
    matrix = materialize(h)
    if not np.any(matrix.imag):
        return matrix.real
    return matrix


def dense_spectrum(h: OperatorSum, count: Optional[int] = None) -> EigenResult:
    check_dense_limit(h.n_sites, ServerErrorCode.DENSE_LIMIT_EXCEEDED_53)
    dim = 1 << h.n_sites
    if count is not None and not 1 <= count <= dim:
        raise ValidationError(ServerErrorCode.EIGEN_COUNT_INVALID_53, f"count {count} not in 1..{dim}")

    matrix = hamiltonian_matrix(h)
    if count is None or count == dim:
        energies, vectors = linalg.eigh(matrix)
    else:
        energies, vectors = linalg.eigh(matrix, subset_by_index=[0, count - 1])

    vectors = np.asarray(vectors, dtype=np.complex128)
    groups = degeneracy_groups(energies)
    logger.debug(f"dense spectrum of {h.n_sites} sites: E0={energies[0]:.12g}, ground group {len(groups[0])}")
    return EigenResult(h.n_sites, np.asarray(energies, dtype=float), vectors, groups, method="dense")


def ground_group_projector(result: EigenResult) -> np.ndarray:
    """基態簡並組的投影算符（稠密）"""
    block = result.vectors[:, result.ground_group]
    return block @ block.conj().T
