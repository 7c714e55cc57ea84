from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple
import logging
import numpy as np
from app.services.lattice.lattice_geometry_service import Lattice
from app.services.pauli.pauli_string_service import StateVector
from app.services.observables.observables_correlation_service import wilson_expectation
from app.services.observables.observables_density_service import local_order_P
from app.services.trotter.trotter_step_service import require_plaquette_lattice, trotter_unitary
from app.services.adiabatic.adiabatic_schedule_service import (
    HamiltonianFamily,
    Schedule,
    discretize,
    make_schedule,
)
from app.services.adiabatic.adiabatic_optimize_service import optimize_sweep
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import DimensionError, ValidationError
from app.utils.util_pool import run_pool

logger = logging.getLogger(__name__)

_NORM_TOL = 1e-10


class Stepper(str, Enum):
    EXACT = "exact"
    TROTTER = "trotter"


@dataclass(frozen=True)
class StepRecord:
    m: int
    t: float
    J: float
    ground_energy: float
    fidelity: float
    wilson: float
    P: float
    energy: float


@dataclass(frozen=True)
class SweepResult:
    records: List[StepRecord]
    final_state: StateVector = field(repr=False)
    tau: float = 0.0
    stepper: str = Stepper.EXACT.value
    slices: int = 1

    @property
    def fidelities(self) -> np.ndarray:
        return np.array([r.fidelity for r in self.records])

    @property
    def min_fidelity(self) -> float:
        return float(self.fidelities.min()) if self.records else 1.0

    def __len__(self) -> int:
        return len(self.records)


def _check_initial_state(l: Lattice, psi0: StateVector) -> None:
    if psi0.n_sites != l.n_sites:
        raise DimensionError(ServerErrorCode.DIMENSION_MISMATCH_54, f"state has {psi0.n_sites} sites, lattice {l.n_sites}")
    if abs(psi0.norm() - 1.0) > _NORM_TOL:
        raise ValidationError(ServerErrorCode.STATE_NOT_NORMALIZED_54, f"|psi0| = {psi0.norm():.12g}")


def evolve(
    l: Lattice,
    g: float,
    J_list: Sequence[float],
    tau: float,
    psi0: StateVector,
    stepper: Stepper = Stepper.EXACT,
    slices: int = 1
) -> SweepResult:
    """U_ad = ∏_m e^{-i H[J_m] τ}；每步記錄與瞬時基態的重疊 |<ψ|ψ_g>|"""
    stepper = Stepper(stepper)
    _check_initial_state(l, psi0)
    if stepper is Stepper.TROTTER:
        require_plaquette_lattice(l)
    family = HamiltonianFamily.build(l, g)

    psi = np.array(psi0.amplitudes)
    previous_ground: Optional[np.ndarray] = None
    records: List[StepRecord] = []
    for m, J in enumerate(J_list, start=1):
        J = float(J)
        energies, vectors = family.eigh(J)
        if stepper is Stepper.EXACT:
            psi = vectors @ (np.exp(-1j * energies * tau) * (vectors.conj().T @ psi))
        else:
            psi = trotter_unitary(J, g, tau, slices) @ psi

        ground = vectors[:, 0].astype(np.complex128)
        # 基態的符號沿掃描連續
        if previous_ground is not None and np.real(np.vdot(previous_ground, ground)) < 0.0:
            ground = -ground
        previous_ground = ground

        state = StateVector(l.n_sites, psi)
        records.append(StepRecord(
            m=m,
            t=(m - 0.5) * tau,
            J=J,
            ground_energy=float(energies[0]),
            fidelity=min(1.0, float(abs(np.vdot(ground, psi)))),
            wilson=wilson_expectation(state, l),
            P=local_order_P(state, 0),
            energy=float(np.real(np.vdot(psi, family.matrix(J) @ psi))),
        ))

    result = SweepResult(records, StateVector(l.n_sites, psi), tau, stepper.value, slices)
    logger.info(f"sweep of {len(records)} steps ({stepper.value}): min fidelity {result.min_fidelity:.6f}")
    return result


def initial_ground_state(l: Lattice, g: float, J: float) -> StateVector:
    _, vectors = HamiltonianFamily.build(l, g).eigh(J)
    return StateVector(l.n_sites, vectors[:, 0])


# ==================== M scan ====================

def _scan_task(task: Tuple[Schedule, int, str, int, Tuple[int, int], bool]) -> Tuple[int, float]:
    schedule, M, stepper, slices, shape, optimize = task
    l = Lattice(*shape)
    sweep = discretize(schedule, M)
    psi0 = initial_ground_state(l, schedule.g, schedule.J_start)
    if optimize:
        sweep = optimize_sweep(l, schedule.g, sweep, psi0)
    result = evolve(l, schedule.g, sweep.J_list, sweep.tau, psi0, Stepper(stepper), slices)
    return M, result.min_fidelity


def min_fidelity_scan(
    g: float,
    J_start: float,
    J_end: float,
    T: float,
    M_list: Sequence[int],
    l: Optional[Lattice] = None,
    stepper: Stepper = Stepper.EXACT,
    slices: int = 1,
    workers: Optional[int] = None,
    gap_power: Optional[float] = None,
    optimize: bool = False
) -> List[Tuple[int, float]]:
    l = l or Lattice(2, 2)
    schedule = make_schedule(g, J_start, J_end, T, l, gap_power=gap_power)
    tasks = [(schedule, int(M), Stepper(stepper).value, slices, (l.Lx, l.Ly), optimize) for M in M_list]
    curve = run_pool(_scan_task, tasks, workers)
    logger.info("M scan: " + ", ".join(f"{M}:{F:.4f}" for M, F in curve))
    return curve
