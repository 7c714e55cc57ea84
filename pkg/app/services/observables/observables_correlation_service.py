from dataclasses import dataclass, field
from typing import List, Optional, Tuple
import logging
import numpy as np
from app.core.core_config import settings
from app.services.lattice.lattice_geometry_service import Lattice, LoopPath
from app.services.lattice.lattice_operator_service import build_hamiltonian, wilson_loop
from app.services.pauli.pauli_string_service import PauliString, StateVector, apply_string
from app.services.pauli.pauli_operator_service import check_dense_limit
from app.services.spectra.spectra_dense_service import dense_spectrum
from app.services.spectra.spectra_lanczos_service import lanczos_ground
from app.services.observables.observables_density_service import StateOrDensity, pauli_expectation
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import DimensionError, ValidationError

logger = logging.getLogger(__name__)

_BASES = {"x": "X", "y": "Y", "z": "Z"}
# 稠密路徑只求最低的若干能級
_DENSE_LEVELS = 32


def wilson_expectation(state: StateOrDensity, l: Lattice, c: Optional[LoopPath] = None) -> float:
    if state.n_sites != l.n_sites:
        raise DimensionError(ServerErrorCode.DIMENSION_MISMATCH_56, f"state has {state.n_sites} sites, lattice {l.n_sites}")
    loop = c if c is not None else l.canonical_loop()
    return pauli_expectation(state, wilson_loop(l, loop))


# ==================== Correlations ====================

@dataclass(frozen=True)
class CorrelationTable:
    Lx: int
    Ly: int
    basis: str
    J: float
    g: float
    singles: np.ndarray = field(repr=False)
    raw: np.ndarray = field(repr=False)
    connected: np.ndarray = field(repr=False)
    ground_energy: float = 0.0
    method: str = "dense"
    # g = 0 時的簡並流形平均
    manifold_averaged: bool = False
    manifold_size: int = 1

    def rows_from(self, site: int = 0) -> List[Tuple[int, int, float, float]]:
        """(k, 距離, raw, connected)，k 為 1-based 格點號"""
        l = Lattice(self.Lx, self.Ly)
        return [
            (k + 1, l.distance(site, k), float(self.raw[site, k]), float(self.connected[site, k]))
            for k in l.sites()
        ]


def _correlation_matrices(states: List[StateVector], letter: str) -> Tuple[np.ndarray, np.ndarray]:
    """對若干態取平均的 <σ_i> 與 <σ_i σ_j>"""
    n_sites = states[0].n_sites
    singles = np.zeros(n_sites)
    raw = np.zeros((n_sites, n_sites))
    for v in states:
        flipped = [apply_string(PauliString.from_sites(n_sites, {i: letter}), v).amplitudes for i in range(n_sites)]
        stacked = np.array(flipped)
        # <σ_i σ_j> = <σ_i ψ | σ_j ψ>
        raw += np.real(stacked.conj() @ stacked.T)
        singles += np.real(stacked.conj() @ v.amplitudes)
    raw /= len(states)
    singles /= len(states)
    raw = 0.5 * (raw + raw.T)
    np.fill_diagonal(raw, 1.0)
    return singles, raw


def _use_dense(l: Lattice) -> bool:
    return l.n_sites <= settings.CORRELATION_DENSE_SITES


def _ground_states(l: Lattice, J: float, g: float) -> Tuple[float, List[StateVector], str, bool]:
    """返回 (能量, 用於平均的態, 方法, 是否為流形平均)"""
    h = build_hamiltonian(l, J, g)
    dim = 1 << l.n_sites

    if g == 0.0:
        # 精確 g=0：基態簡並，取稠密基態組的平均
        result = dense_spectrum(h, count=min(dim, _DENSE_LEVELS))
        group = result.ground_group
        logger.warning(f"g=0 on {l.shape}: averaging over a {len(group)}-fold ground manifold")
        return result.ground_energy, [result.state(i) for i in group], "dense", True

    continuation = J != 0.0 and abs(g) / abs(J) < settings.CONTINUATION_RATIO
    reference: Optional[StateVector] = None
    if continuation:
        h_ref = build_hamiltonian(l, J, settings.CONTINUATION_G * abs(J) * np.sign(g))
        if _use_dense(l):
            reference = dense_spectrum(h_ref, count=1).state(0)
        else:
            reference = lanczos_ground(h_ref, 1).state(0)

    if _use_dense(l):
        result = dense_spectrum(h, count=min(dim, _DENSE_LEVELS))
        group = result.ground_group
        if reference is not None and len(group) > 1:
            # 近簡並：參考態投影到基態組
            block = result.vectors[:, group]
            projected = block @ (block.conj().T @ reference.amplitudes)
            return result.ground_energy, [StateVector(l.n_sites, projected).normalized()], "dense", False
        return result.ground_energy, [result.state(0)], "dense", False

    result = lanczos_ground(h, 1, start=reference)
    return result.ground_energy, [result.state(0)], "lanczos", False


def spin_correlations(l: Lattice, J: float, g: float, basis: str = "x") -> CorrelationTable:
    if basis not in _BASES:
        raise ValidationError(ServerErrorCode.PAULI_LABEL_INVALID_51, f"basis {basis!r} not in x, y, z")
    check_dense_limit(l.n_sites, ServerErrorCode.DENSE_LIMIT_EXCEEDED_56)

    energy, states, method, averaged = _ground_states(l, J, g)
    singles, raw = _correlation_matrices(states, _BASES[basis])
    connected = raw - np.outer(singles, singles)
    logger.debug(f"correlations {l.shape} J={J} g={g} basis={basis} via {method}")
    return CorrelationTable(
        Lx=l.Lx,
        Ly=l.Ly,
        basis=basis,
        J=J,
        g=g,
        singles=singles,
        raw=raw,
        connected=connected,
        ground_energy=energy,
        method=method,
        manifold_averaged=averaged,
        manifold_size=len(states),
    )
