"""
Pulse programs and their dense unitaries.

Rotation(sites, axis, angle) = ∏_s exp(-i·angle·σ_axis(s)/2), axis in {x, y, -x, -y}.
X is Rotation(x, π/2), X̄ is Rotation(-x, π/2); Y and Ȳ likewise.
Instructions are listed in time order; the composed unitary is U_last ··· U_first.
"""
from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple, Union
import logging
import numpy as np
from app.core.core_config import settings
from app.services.pauli.pauli_operator_service import check_dense_limit, kron_sites
from app.services.trotter.trotter_machine_service import NmrMachine
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import DimensionError, MachineError, ValidationError

logger = logging.getLogger(__name__)

AXES = ("x", "y", "-x", "-y")

_IDENTITY = np.eye(2, dtype=np.complex128)
_SIGMA = {
    "x": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128),
    "y": np.array([[0.0, -1j], [1j, 0.0]], dtype=np.complex128),
    "z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128),
}


def axis_matrix(axis: str) -> np.ndarray:
    if axis not in AXES:
        raise ValidationError(ServerErrorCode.PULSE_TEXT_INVALID_55, f"axis {axis!r} not in {AXES}")
    sign = -1.0 if axis.startswith("-") else 1.0
    return sign * _SIGMA[axis[-1]]


def single_site_rotation(axis_sigma: np.ndarray, angle: float) -> np.ndarray:
    """exp(-i·angle·σ/2)"""
    return np.cos(angle / 2.0) * _IDENTITY - 1j * np.sin(angle / 2.0) * axis_sigma


# ==================== Instructions ====================

@dataclass(frozen=True)
class Rotation:
    sites: Tuple[int, ...]
    axis: str
    angle: float

    def __post_init__(self):
        sites = tuple(sorted(int(s) for s in self.sites))
        if not sites or len(set(sites)) != len(sites):
            raise ValidationError(ServerErrorCode.PULSE_TEXT_INVALID_55, f"bad rotation site set {self.sites}")
        axis_matrix(self.axis)
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "angle", float(self.angle))


@dataclass(frozen=True)
class FreeEvolution:
    duration: float

    def __post_init__(self):
        if self.duration < 0.0:
            raise ValidationError(ServerErrorCode.DURATION_NEGATIVE_55, f"free evolution of {self.duration} s")
        object.__setattr__(self, "duration", float(self.duration))


@dataclass(frozen=True)
class ZPhase:
    site: int
    angle: float

    def __post_init__(self):
        object.__setattr__(self, "site", int(self.site))
        object.__setattr__(self, "angle", float(self.angle))


@dataclass(frozen=True, eq=False)
class IdealUnitary:
    label: str
    matrix: np.ndarray = field(repr=False)


Instruction = Union[Rotation, FreeEvolution, ZPhase, IdealUnitary]


@dataclass(frozen=True)
class PulseSequence:
    n_sites: int
    instructions: Tuple[Instruction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "instructions", tuple(self.instructions))
        for instruction in self.instructions:
            sites: Tuple[int, ...] = ()
            if isinstance(instruction, Rotation):
                sites = instruction.sites
            elif isinstance(instruction, ZPhase):
                sites = (instruction.site,)
            elif isinstance(instruction, IdealUnitary) and instruction.matrix.shape != (1 << self.n_sites, 1 << self.n_sites):
                raise DimensionError(ServerErrorCode.DIMENSION_MISMATCH_55, f"{instruction.label} has shape {instruction.matrix.shape}")
            if any(not 0 <= s < self.n_sites for s in sites):
                raise ValidationError(ServerErrorCode.PULSE_TEXT_INVALID_55, f"site out of range in {instruction}")

    @classmethod
    def of(cls, n_sites: int, instructions: Iterable[Instruction]) -> "PulseSequence":
        return cls(n_sites, tuple(instructions))

    def __add__(self, other: "PulseSequence") -> "PulseSequence":
        if other.n_sites != self.n_sites:
            raise DimensionError(ServerErrorCode.DIMENSION_MISMATCH_55, f"{self.n_sites} vs {other.n_sites} sites")
        return PulseSequence(self.n_sites, self.instructions + other.instructions)

    def __len__(self) -> int:
        return len(self.instructions)

    def repeated(self, times: int) -> "PulseSequence":
        return PulseSequence(self.n_sites, self.instructions * times)

    @property
    def free_time(self) -> float:
        return float(sum(i.duration for i in self.instructions if isinstance(i, FreeEvolution)))

    @property
    def is_machine_program(self) -> bool:
        return not any(isinstance(i, IdealUnitary) for i in self.instructions)


# ==================== Unitaries ====================

def instruction_unitary(instruction: Instruction, n_sites: int, machine: Optional[NmrMachine] = None) -> np.ndarray:
    if isinstance(instruction, Rotation):
        single = single_site_rotation(axis_matrix(instruction.axis), instruction.angle)
        return kron_sites({site: single for site in instruction.sites}, n_sites)
    if isinstance(instruction, ZPhase):
        return kron_sites({instruction.site: single_site_rotation(_SIGMA["z"], instruction.angle)}, n_sites)
    if isinstance(instruction, FreeEvolution):
        if machine is None:
            raise MachineError(ServerErrorCode.MACHINE_DESCRIPTION_INVALID_55, "free evolution needs a machine description")
        if machine.n_sites != n_sites:
            raise DimensionError(ServerErrorCode.DIMENSION_MISMATCH_55, f"machine has {machine.n_sites} sites, program {n_sites}")
        return np.diag(np.exp(-1j * machine.diagonal_energies() * instruction.duration))
    return np.asarray(instruction.matrix, dtype=np.complex128)


def sequence_unitary(s: PulseSequence, m: Optional[NmrMachine] = None) -> np.ndarray:
    check_dense_limit(s.n_sites, ServerErrorCode.DENSE_LIMIT_EXCEEDED_55)
    unitary = np.eye(1 << s.n_sites, dtype=np.complex128)
    for instruction in s.instructions:
        unitary = instruction_unitary(instruction, s.n_sites, m) @ unitary
    return unitary


def sequence_inverse(s: PulseSequence, m: Optional[NmrMachine] = None) -> PulseSequence:
    """逐條取逆並倒序；自由演化的逆只能以 IdealUnitary 表示"""
    inverted = []
    for instruction in reversed(s.instructions):
        if isinstance(instruction, Rotation):
            inverted.append(Rotation(instruction.sites, instruction.axis, -instruction.angle))
        elif isinstance(instruction, ZPhase):
            inverted.append(ZPhase(instruction.site, -instruction.angle))
        elif isinstance(instruction, FreeEvolution):
            matrix = instruction_unitary(instruction, s.n_sites, m)
            inverted.append(IdealUnitary(f"FREE({instruction.duration!r})^-1", matrix.conj().T))
        else:
            inverted.append(IdealUnitary(f"{instruction.label}^-1", instruction.matrix.conj().T))
    return PulseSequence(s.n_sites, tuple(inverted))


# ==================== Verification ====================

def unitarity_error(u: np.ndarray) -> float:
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def verify_equivalence(u: np.ndarray, v: np.ndarray) -> Tuple[float, complex]:
    """min_φ ||u - φ v||_F / ||u||_F，φ = Tr(v† u)/|Tr(v† u)|"""
    if u.shape != v.shape or u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimensionError(ServerErrorCode.DIMENSION_MISMATCH_55, f"{u.shape} vs {v.shape}")
    for name, matrix in (("u", u), ("v", v)):
        error = unitarity_error(matrix)
        if error > settings.UNITARY_TOL:
            raise ValidationError(ServerErrorCode.MATRIX_NOT_UNITARY_55, f"{name} deviates from unitary by {error:.3e}")
    overlap = complex(np.trace(v.conj().T @ u))
    phase = overlap / abs(overlap) if abs(overlap) > 0.0 else 1.0 + 0.0j
    distance = float(np.linalg.norm(u - phase * v) / np.linalg.norm(u))
    return distance, phase
