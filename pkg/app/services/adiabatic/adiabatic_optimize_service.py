"""
Fixed-M sweep refinement

Keeps M and τ and moves each J_m inside (J_{m-1}, J_{m+1}) to raise
min_m |<ψ_g(J_m)|ψ_m>| along the exact frozen-step evolution. Coordinate pattern
search: try a move towards the later neighbour, then towards the earlier one, keep
the first that improves by more than SWEEP_OPTIMIZE_TOL, halve the step after a
pass without improvement.
"""
from dataclasses import replace
from typing import List, Optional, Tuple
import logging
import numpy as np
from app.core.core_config import settings
from app.services.lattice.lattice_geometry_service import Lattice
from app.services.pauli.pauli_string_service import StateVector
from app.services.adiabatic.adiabatic_schedule_service import DiscreteSweep, HamiltonianFamily

logger = logging.getLogger(__name__)


class SweepObjective:
    """min_m |<ψ_g(J_m)|ψ_m>|；保留每一步之前的態，試探只重算後段"""

    def __init__(self, family: HamiltonianFamily, psi0: np.ndarray, tau: float, J_list: np.ndarray):
        self.family = family
        self.tau = tau
        self.J = np.array(J_list, dtype=float)
        self.states = np.empty((len(self.J) + 1, psi0.size), dtype=np.complex128)
        self.states[0] = psi0
        self.fidelities = np.empty(len(self.J))
        self.evaluations = 0
        self._pending: Optional[Tuple[int, float, List[np.ndarray], List[float]]] = None

        states, fidelities = self._suffix(0, float(self.J[0]))
        self.states[1:] = states
        self.fidelities[:] = fidelities
        self.evaluations = 1

    @property
    def min_fidelity(self) -> float:
        return min(1.0, float(self.fidelities.min()))

    def _step(self, J: float, psi: np.ndarray) -> Tuple[np.ndarray, float]:
        energies, vectors = self.family.eigh(J)
        psi = vectors @ (np.exp(-1j * energies * self.tau) * (vectors.conj().T @ psi))
        return psi, float(abs(np.vdot(vectors[:, 0], psi)))

    def _suffix(self, m: int, value: float) -> Tuple[List[np.ndarray], List[float]]:
        psi = self.states[m]
        states, fidelities = [], []
        for k in range(m, len(self.J)):
            psi, fidelity = self._step(value if k == m else float(self.J[k]), psi)
            states.append(psi)
            fidelities.append(fidelity)
        return states, fidelities

    def trial(self, m: int, value: float) -> float:
        """J_m 換成 value 後的最小保真度，不改動目前的掃描"""
        self.evaluations += 1
        states, fidelities = self._suffix(m, value)
        self._pending = (m, value, states, fidelities)
        head = float(self.fidelities[:m].min()) if m else 1.0
        return min(1.0, head, min(fidelities))

    def accept(self) -> None:
        m, value, states, fidelities = self._pending
        self.J[m] = value
        self.states[m + 1:] = states
        self.fidelities[m:] = fidelities
        self._pending = None


def optimize_sweep(
    l: Lattice,
    g: float,
    sweep: DiscreteSweep,
    psi0: StateVector,
    step: Optional[float] = None,
    min_step: Optional[float] = None,
    max_evaluations: Optional[int] = None
) -> DiscreteSweep:
    step = settings.SWEEP_OPTIMIZE_STEP if step is None else step
    min_step = settings.SWEEP_OPTIMIZE_MIN_STEP if min_step is None else min_step
    budget = settings.SWEEP_OPTIMIZE_MAX_EVALUATIONS if max_evaluations is None else max_evaluations

    objective = SweepObjective(HamiltonianFamily.build(l, g), np.array(psi0.amplitudes, dtype=np.complex128), sweep.tau, sweep.J_list)
    start = best = objective.min_fidelity
    M = len(objective.J)

    d = step
    while d >= min_step and objective.evaluations < budget:
        improved = False
        for m in range(M):
            if objective.evaluations >= budget:
                break
            lo = sweep.J_start if m == 0 else float(objective.J[m - 1])
            hi = sweep.J_end if m == M - 1 else float(objective.J[m + 1])
            current = float(objective.J[m])
            # 先往後一點移，再往前一點移；J_m 始終夾在兩鄰點之間
            for value in (current + d * (hi - current), current - d * (current - lo)):
                fidelity = objective.trial(m, value)
                if fidelity > best + settings.SWEEP_OPTIMIZE_TOL:
                    objective.accept()
                    best = fidelity
                    improved = True
                    break
        if not improved:
            d /= 2.0

    logger.info(
        f"sweep refinement M={M}: min fidelity {start:.6f} -> {best:.6f} "
        f"({objective.evaluations} evaluations, final step {d:.3g})"
    )
    return replace(sweep, J_list=objective.J.copy(), optimized=True)
