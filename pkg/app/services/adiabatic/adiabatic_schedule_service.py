"""
Constant-adiabaticity sweep J(t)

    dJ/dt = c · r(J),   r(J) = min_e (ε_e - ε_g)^p / |<ψ_e|∂H/∂J|ψ_g>|,   ∂H/∂J = -Σ F_i

p = 2 is the continuous-time adiabatic condition. With p = 1 the instantaneous ground
state moves at constant speed, |dψ_g/dt| = c, which is what bounds a product of
frozen steps of fixed length τ; it is the default (SCHEDULE_GAP_POWER).

Degenerate excited levels are treated as one group with coupling
sqrt(Σ_e |<ψ_e|∂H/∂J|ψ_g>|²), which does not depend on the basis chosen inside the group.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Tuple
import logging
import numpy as np
from scipy import linalg
from scipy.integrate import cumulative_trapezoid
from app.core.core_config import settings
from app.services.lattice.lattice_geometry_service import Lattice
from app.services.lattice.lattice_operator_service import field_term, wen_term
from app.services.pauli.pauli_operator_service import check_dense_limit, materialize
from app.services.spectra.spectra_dense_service import degeneracy_groups
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import DomainError, ValidationError

logger = logging.getLogger(__name__)


# ==================== Gap ratio ====================

@dataclass(frozen=True)
class GapRatio:
    J: float
    ratio: float
    # 決定 r(J) 的激發能級組（在能譜中的起始下標）
    level: int
    gap: float
    coupling: float


@dataclass(frozen=True)
class HamiltonianFamily:
    """H(J) = J · dH + H_field，兩部分都是稠密矩陣"""
    n_sites: int
    g: float
    dH: np.ndarray = field(repr=False)
    field_matrix: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, l: Lattice, g: float) -> "HamiltonianFamily":
        check_dense_limit(l.n_sites, ServerErrorCode.DENSE_LIMIT_EXCEEDED_54)
        dH = materialize(wen_term(l, 1.0))
        field_matrix = materialize(field_term(l, g))
        return cls(l.n_sites, g, dH.real if not np.any(dH.imag) else dH, field_matrix.real)

    def matrix(self, J: float) -> np.ndarray:
        return J * self.dH + self.field_matrix

    def eigh(self, J: float) -> Tuple[np.ndarray, np.ndarray]:
        return linalg.eigh(self.matrix(J))


def _family_gap_ratio(family: HamiltonianFamily, J: float, gap_power: float) -> GapRatio:
    energies, vectors = family.eigh(J)
    groups = degeneracy_groups(energies)
    ground = vectors[:, groups[0][0]]
    couplings = np.abs(vectors.conj().T @ (family.dH @ ground))

    best = GapRatio(J, np.inf, -1, np.inf, 0.0)
    for group in groups[1:]:
        coupling = float(np.sqrt(np.sum(couplings[group] ** 2)))
        if coupling < settings.COUPLING_FLOOR:
            continue
        gap = float(np.mean(energies[group]) - energies[0])
        ratio = gap ** gap_power / coupling
        if ratio < best.ratio:
            best = GapRatio(J, ratio, group[0], gap, coupling)
    return best


def gap_ratio(l: Lattice, J: float, g: float, gap_power: Optional[float] = None) -> GapRatio:
    power = _validate_gap_power(settings.SCHEDULE_GAP_POWER if gap_power is None else gap_power)
    return _family_gap_ratio(HamiltonianFamily.build(l, g), J, power)


# ==================== Schedule ====================

@dataclass(frozen=True)
class Schedule:
    g: float
    J_start: float
    J_end: float
    T: float
    adiabaticity_c: float
    times: np.ndarray = field(repr=False)
    J_grid: np.ndarray = field(repr=False)
    ratios: np.ndarray = field(repr=False)

    def J_at(self, t: float) -> float:
        # times 遞增；J 遞減的掃描同樣適用
        return float(np.interp(t, self.times, self.J_grid))

    @property
    def samples(self) -> List[Tuple[float, float]]:
        return list(zip(self.times.tolist(), self.J_grid.tolist()))

    def to_rows(self) -> List[Tuple[float, float, float]]:
        return [(float(t), float(J), float(r)) for t, J, r in zip(self.times, self.J_grid, self.ratios)]


def _validate_sweep(g: float, J_start: float, J_end: float, T: float) -> None:
    if g <= 0.0:
        raise DomainError(ServerErrorCode.TRANSVERSE_FIELD_MUST_BE_POSITIVE_54, f"g={g}: the gap closes")
    if J_start == J_end:
        raise ValidationError(ServerErrorCode.SWEEP_ENDPOINTS_EQUAL_54, f"J_start = J_end = {J_start}")
    if T <= 0.0:
        raise ValidationError(ServerErrorCode.DURATION_MUST_BE_POSITIVE_54, f"T={T}")


def _validate_gap_power(power: float) -> float:
    if power <= 0.0:
        raise ValidationError(ServerErrorCode.GAP_POWER_MUST_BE_POSITIVE_54, f"p={power}")
    return power


def make_schedule(
    g: float,
    J_start: float,
    J_end: float,
    T: float,
    l: Optional[Lattice] = None,
    grid_points: Optional[int] = None,
    gap_power: Optional[float] = None
) -> Schedule:
    _validate_sweep(g, J_start, J_end, T)
    l = l or Lattice(2, 2)
    points = grid_points or settings.SCHEDULE_GRID_POINTS
    power = _validate_gap_power(settings.SCHEDULE_GAP_POWER if gap_power is None else gap_power)

    family = HamiltonianFamily.build(l, g)
    J_grid = np.linspace(J_start, J_end, points)
    ratios = np.array([_family_gap_ratio(family, J, power).ratio for J in J_grid])
    if not np.all(np.isfinite(ratios)):
        raise DomainError(
            ServerErrorCode.TRANSVERSE_FIELD_MUST_BE_POSITIVE_54,
            "no excited level couples to the ground state along the sweep"
        )

    # dt = |dJ| / (c r(J))，I(J) = ∫ |dJ| / r，T = I / c
    elapsed = cumulative_trapezoid(1.0 / ratios, np.abs(J_grid - J_start), initial=0.0)
    total = float(elapsed[-1])
    c = total / T
    times = elapsed / c

    binding = int(np.argmin(ratios))
    logger.info(
        f"schedule g={g} J {J_start}->{J_end} T={T} p={power}: c={c:.6g}, "
        f"slowest at J={J_grid[binding]:.4g} (r={ratios[binding]:.4g})"
    )
    return Schedule(g, J_start, J_end, T, float(c), times, J_grid, ratios)


# ==================== Discretization ====================

@dataclass(frozen=True)
class DiscreteSweep:
    M: int
    tau: float
    times: np.ndarray = field(repr=False)
    J_list: np.ndarray = field(repr=False)
    J_start: float = 0.0
    J_end: float = 0.0
    optimized: bool = False

    def __len__(self) -> int:
        return self.M


def discretize(s: Schedule, M: int) -> DiscreteSweep:
    """中點採樣 t_m = (m - 1/2) T / M"""
    if M < 2:
        raise ValidationError(ServerErrorCode.STEP_COUNT_TOO_SMALL_54, f"M={M}")
    tau = s.T / M
    times = (np.arange(1, M + 1) - 0.5) * tau
    J_list = np.interp(times, s.times, s.J_grid)
    return DiscreteSweep(M, tau, times, J_list, s.J_start, s.J_end)
