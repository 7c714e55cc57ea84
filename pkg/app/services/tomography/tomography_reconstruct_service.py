from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Optional, Tuple
import logging
import numpy as np
from app.services.lattice.lattice_geometry_service import Lattice
from app.services.pauli.pauli_string_service import PauliString, string_action
from app.services.observables.observables_correlation_service import wilson_expectation
from app.services.observables.observables_density_service import (
    DensityMatrix,
    StateOrDensity,
    concurrence,
    local_order_P,
    reduced_density,
    state_fidelity,
    to_density,
)
from app.services.tomography.tomography_record_service import MeasurementRecord, pauli_words
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import DimensionError, IncompletenessError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Reconstruction:
    """raw 為線性反演結果（可能非正定），projected 為截斷負本徵值後重新歸一的物理態"""
    raw: np.ndarray = field(repr=False)
    projected: DensityMatrix = field(repr=False)
    clipped_weight: float = 0.0


def linear_inversion(rec: MeasurementRecord) -> np.ndarray:
    """ρ = 2^-n Σ_P entry(P) P"""
    missing = rec.missing_words()
    if missing:
        raise IncompletenessError(ServerErrorCode.MEASUREMENT_RECORD_INCOMPLETE_57, missing)
    dim = 1 << rec.n_sites
    rho = np.zeros((dim, dim), dtype=np.complex128)
    columns = np.arange(dim)
    for word in pauli_words(rec.n_sites):
        targets, coefficient = string_action(PauliString.from_label(word))
        # P[targets[b], b] = coefficient[b]
        rho[targets, columns] += rec.entries[word] * coefficient
    rho /= dim
    return 0.5 * (rho + rho.conj().T)


def project_physical(matrix: np.ndarray) -> Tuple[np.ndarray, float]:
    eigenvalues, vectors = np.linalg.eigh(matrix)
    clipped = np.clip(eigenvalues, 0.0, None)
    weight = float(np.sum(clipped - eigenvalues))
    clipped /= np.sum(clipped)
    projected = (vectors * clipped) @ vectors.conj().T
    return 0.5 * (projected + projected.conj().T), weight


def reconstruct(rec: MeasurementRecord) -> Reconstruction:
    raw = linear_inversion(rec)
    projected, weight = project_physical(raw)
    if weight > 0.0:
        logger.debug(f"physicality projection removed {weight:.3e} of negative weight")
    return Reconstruction(raw, DensityMatrix(rec.n_sites, projected), weight)


def frobenius_error(a: StateOrDensity, b: np.ndarray) -> float:
    return float(np.linalg.norm(to_density(a).matrix - np.asarray(b)))


# ==================== Report ====================

@dataclass(frozen=True)
class TomographyReport:
    fidelity: float
    fidelity_raw: float
    wilson_true: float
    wilson_rec: float
    P_true: float
    P_rec: float
    # (i, j) 0-based -> (真值, 重構值)
    concurrences: Dict[Tuple[int, int], Tuple[float, float]] = field(default_factory=dict)
    frobenius: float = 0.0

    @property
    def wilson_delta(self) -> float:
        return self.wilson_rec - self.wilson_true

    @property
    def P_delta(self) -> float:
        return self.P_rec - self.P_true

    def concurrence_delta(self, pair: Tuple[int, int]) -> float:
        true_value, rec_value = self.concurrences[pair]
        return rec_value - true_value


def tomography_report(
    rho_true: StateOrDensity,
    rho_rec: Reconstruction,
    l: Optional[Lattice] = None
) -> TomographyReport:
    true_density = to_density(rho_true)
    projected = rho_rec.projected
    if true_density.n_sites != projected.n_sites:
        raise DimensionError(
            ServerErrorCode.DIMENSION_MISMATCH_56,
            f"{true_density.n_sites} vs {projected.n_sites} sites"
        )
    l = l or Lattice(2, 2)

    concurrences = {
        (i, j): (
            concurrence(reduced_density(true_density, (i, j))),
            concurrence(reduced_density(projected, (i, j))),
        )
        for i, j in combinations(range(projected.n_sites), 2)
    }
    return TomographyReport(
        fidelity=state_fidelity(true_density, projected),
        fidelity_raw=state_fidelity(true_density, rho_rec.raw),
        wilson_true=wilson_expectation(true_density, l),
        wilson_rec=wilson_expectation(projected, l),
        P_true=local_order_P(true_density, 0),
        P_rec=local_order_P(projected, 0),
        concurrences=concurrences,
        frobenius=frobenius_error(true_density, projected.matrix),
    )
