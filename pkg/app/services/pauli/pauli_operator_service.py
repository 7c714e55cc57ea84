from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple, Union
import logging
import numpy as np
from app.core.core_config import settings
from app.services.pauli.pauli_string_service import (
    PauliString,
    StateVector,
    string_action,
    apply_string_array,
)
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import CapacityError, DimensionError

logger = logging.getLogger(__name__)

Term = Tuple[float, PauliString]

_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0)


# ==================== Types ====================

@dataclass(frozen=True)
class OperatorSum:
    n_sites: int
    terms: Tuple[Term, ...] = ()

    def __post_init__(self):
        normalized: List[Term] = []
        for coefficient, string in self.terms:
            if string.n_sites != self.n_sites:
                raise DimensionError(
                    ServerErrorCode.DIMENSION_MISMATCH_51,
                    f"term {string.label} has {string.n_sites} sites, sum has {self.n_sites}"
                )
            normalized.append((float(coefficient), string))
        object.__setattr__(self, "terms", tuple(normalized))

    @classmethod
    def from_terms(cls, n_sites: int, terms: Iterable[Term]) -> "OperatorSum":
        return cls(n_sites, tuple(terms))

    def __add__(self, other: "OperatorSum") -> "OperatorSum":
        if other.n_sites != self.n_sites:
            raise DimensionError(ServerErrorCode.DIMENSION_MISMATCH_51, f"{self.n_sites} vs {other.n_sites} sites")
        return OperatorSum(self.n_sites, self.terms + other.terms)

    def scaled(self, factor: float) -> "OperatorSum":
        return OperatorSum(self.n_sites, tuple((factor * c, p) for c, p in self.terms))

    def simplify(self, drop_tol: float = 0.0) -> "OperatorSum":
        """合併重複 Pauli 串（係數相加）；±1 相位吸收進係數"""
        merged: Dict[Tuple[int, int, int], float] = {}
        order: List[Tuple[int, int, int]] = []
        for coefficient, string in self.terms:
            sign = -1.0 if string.phase_exp >= 2 else 1.0
            key = (string.x_mask, string.z_mask, string.phase_exp % 2)
            if key not in merged:
                merged[key] = 0.0
                order.append(key)
            merged[key] += sign * coefficient
        terms = tuple(
            (merged[key], PauliString(self.n_sites, key[0], key[1], key[2]))
            for key in order
            if abs(merged[key]) > drop_tol
        )
        return OperatorSum(self.n_sites, terms)

    def is_hermitian_weighted(self) -> bool:
        return all(string.is_hermitian() for _, string in self.terms)

    def coefficient_of(self, string: PauliString) -> float:
        """合併後某個 Pauli 串（按字母匹配）的實係數"""
        total = 0.0
        for coefficient, term in self.simplify().terms:
            if term.x_mask == string.x_mask and term.z_mask == string.z_mask:
                total += coefficient * (term.phase * np.conj(string.phase)).real
        return total

    def apply(self, v: StateVector) -> StateVector:
        return StateVector(v.n_sites, self.apply_array(v.amplitudes))

    def apply_array(self, amplitudes: np.ndarray) -> np.ndarray:
        return MatrixFreeOperator(self)(amplitudes)

    def __len__(self) -> int:
        return len(self.terms)


class MatrixFreeOperator:
    """緩存每個 Pauli 串的 (目標索引, 係數)，反覆作用時不重複計算"""

    def __init__(self, h: OperatorSum):
        self.n_sites = h.n_sites
        self.dim = 1 << h.n_sites
        self._actions = [(coefficient, string_action(string)) for coefficient, string in h.terms]

    def __call__(self, amplitudes: np.ndarray) -> np.ndarray:
        if amplitudes.shape[0] != self.dim:
            raise DimensionError(ServerErrorCode.DIMENSION_MISMATCH_51, f"vector of length {amplitudes.shape[0]} for dim {self.dim}")
        out = np.zeros(self.dim, dtype=np.complex128)
        for coefficient, action in self._actions:
            out += coefficient * apply_string_array(None, amplitudes, action)
        return out


# ==================== Materialize ====================

def check_dense_limit(n_sites: int, code: int = ServerErrorCode.DENSE_LIMIT_EXCEEDED_51) -> None:
    if n_sites > settings.DENSE_LIMIT:
        raise CapacityError(code, f"{n_sites} sites > dense limit {settings.DENSE_LIMIT}")


def string_matrix(p: PauliString) -> np.ndarray:
    check_dense_limit(p.n_sites)
    dim = 1 << p.n_sites
    targets, coefficient = string_action(p)
    matrix = np.zeros((dim, dim), dtype=np.complex128)
    matrix[targets, np.arange(dim)] = coefficient
    return matrix


def materialize(h: Union[OperatorSum, PauliString]) -> np.ndarray:
    if isinstance(h, PauliString):
        return string_matrix(h)
    check_dense_limit(h.n_sites)
    dim = 1 << h.n_sites
    matrix = np.zeros((dim, dim), dtype=np.complex128)
    columns = np.arange(dim)
    for coefficient, string in h.terms:
        targets, values = string_action(string)
        matrix[targets, columns] += coefficient * values
    return matrix


# ==================== Expectation ====================

def expectation_sum(h: OperatorSum, v: StateVector) -> float:
    value = complex(np.vdot(v.amplitudes, h.apply_array(v.amplitudes)))
    return value.real


def x_basis_rotation(v: StateVector) -> StateVector:
    """逐格點 Hadamard：|0>_x = (|0>+|1>)/sqrt(2)，自逆"""
    tensor = v.amplitudes.reshape((2,) * v.n_sites)
    for axis in range(v.n_sites):
        tensor = np.moveaxis(np.tensordot(_HADAMARD, tensor, axes=([1], [axis])), 0, axis)
    return StateVector(v.n_sites, tensor.reshape(-1))


def kron_sites(single_site: Dict[int, np.ndarray], n_sites: int, identity: Optional[np.ndarray] = None) -> np.ndarray:
    """little-endian Kronecker 積：site 0 為最低位，放在 kron 鏈最右端"""
    check_dense_limit(n_sites)
    eye = identity if identity is not None else np.eye(2, dtype=np.complex128)
    matrix = np.ones((1, 1), dtype=np.complex128)
    for site in reversed(range(n_sites)):
        matrix = np.kron(matrix, single_site.get(site, eye))
    return matrix
