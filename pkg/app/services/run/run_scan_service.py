from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Dict, List, Tuple
import logging
import numpy as np
from app.schemas.run_request import ScanRequestModel
from app.schemas.run_response import ScanCurveModel, ScanSummaryModel
from app.services.lattice.lattice_geometry_service import Lattice
from app.services.lattice.lattice_operator_service import build_hamiltonian
from app.services.spectra.spectra_analytic_service import analytic_amplitudes_2x2
from app.services.spectra.spectra_dense_service import dense_spectrum
from app.services.observables.observables_correlation_service import wilson_expectation
from app.services.observables.observables_density_service import concurrence, local_order_P, reduced_density
from app.services.run.run_plot_service import plot_scan
from app.utils.util_file import format_number, resolve_output_dir, write_csv, write_plots_last
from app.utils.util_pool import run_pool

logger = logging.getLogger(__name__)

_WIDTH_LEVEL = 0.9


@dataclass(frozen=True)
class ScanPoint:
    J: float
    g: float
    energy: float
    wilson: float
    P: float
    concurrences: Tuple[float, ...]
    levels: np.ndarray = field(repr=False)


def concurrence_pairs(l: Lattice) -> List[Tuple[int, int]]:
    """規範 plaquette 上的所有格點對"""
    return list(combinations(sorted(l.canonical_loop().sites), 2))


def pair_name(pair: Tuple[int, int]) -> str:
    return f"C_{pair[0] + 1}{pair[1] + 1}"


def theory_curves(J: float, g: float) -> Tuple[float, float]:
    """2x2 基態：<W> = J/sqrt(g²+J²)，P = g/sqrt(g²+J²)"""
    norm = float(np.hypot(g, J))
    if norm == 0.0:
        return float("nan"), float("nan")
    return J / norm, g / norm


def _scan_point(task: Tuple[int, int, float, float]) -> ScanPoint:
    Lx, Ly, g, J = task
    l = Lattice(Lx, Ly)
    result = dense_spectrum(build_hamiltonian(l, J, g))
    if len(result.ground_group) > 1:
        logger.warning(f"J={J} g={g}: {len(result.ground_group)}-fold ground level, using the first vector")
    state = result.state(0)
    concurrences = tuple(concurrence(reduced_density(state, pair)) for pair in concurrence_pairs(l))
    return ScanPoint(
        J=J,
        g=g,
        energy=result.ground_energy,
        wilson=wilson_expectation(state, l),
        P=local_order_P(state, 0),
        concurrences=concurrences,
        levels=result.energies,
    )


def _transition_width(points: List[ScanPoint]) -> float:
    inside = [p.J for p in points if abs(p.wilson) < _WIDTH_LEVEL]
    return float(max(inside) - min(inside)) if inside else 0.0


def run_scan(request_model: ScanRequestModel) -> ScanSummaryModel:
    l = Lattice(request_model.Lx, request_model.Ly)
    out = resolve_output_dir(request_model.out)
    J_grid = np.linspace(request_model.j_min, request_model.j_max, request_model.j_points)
    is_plaquette = (l.Lx, l.Ly) == (2, 2)

    tasks = [(l.Lx, l.Ly, float(g), float(J)) for g in request_model.g_list for J in J_grid]
    points = run_pool(_scan_point, tasks, request_model.workers)

    pairs = concurrence_pairs(l)
    files: List[Path] = []
    curves: List[ScanCurveModel] = []
    plot_data: Dict[float, Dict[str, np.ndarray]] = {}
    for index, g in enumerate(request_model.g_list):
        curve = points[index * len(J_grid):(index + 1) * len(J_grid)]
        theory = [theory_curves(p.J, p.g) for p in curve]
        rows = [
            (p.J, p.energy, p.wilson, p.P, w_th, p_th) + p.concurrences
            for p, (w_th, p_th) in zip(curve, theory)
        ]
        tag = format_number(float(g))
        files.append(write_csv(
            out / f"scan_g{tag}.csv", "scan",
            ["J", "energy", "wilson", "P", "wilson_theory", "P_theory"] + [pair_name(p) for p in pairs],
            rows
        ))

        if is_plaquette:
            files.append(write_csv(
                out / f"scan_levels_g{tag}.csv", "scan_levels",
                ["J"] + [f"E_{i}" for i in range(len(curve[0].levels))],
                [(p.J,) + tuple(p.levels) for p in curve]
            ))
        if is_plaquette and g > 0:
            amplitudes = [analytic_amplitudes_2x2(p.J, p.g) for p in curve]
            files.append(write_csv(
                out / f"scan_amplitudes_g{tag}.csv", "scan_amplitudes",
                ["J", "alpha1", "alpha2", "alpha3", "A", "alpha1_n", "alpha2_n", "alpha3_n"],
                [(a.J, a.alpha1, a.alpha2, a.alpha3, a.norm_A) + a.normalized for a in amplitudes]
            ))

        curves.append(ScanCurveModel(
            g=float(g),
            points=len(curve),
            max_wilson_error=float(max(abs(p.wilson - t[0]) for p, t in zip(curve, theory))),
            max_P_error=float(max(abs(p.P - t[1]) for p, t in zip(curve, theory))),
            transition_width=_transition_width(curve),
        ))
        plot_data[float(g)] = {
            "J": np.array([p.J for p in curve]),
            "wilson": np.array([p.wilson for p in curve]),
            "P": np.array([p.P for p in curve]),
            "wilson_theory": np.array([t[0] for t in theory]),
            "P_theory": np.array([t[1] for t in theory]),
        }

    files += write_plots_last([lambda: plot_scan(out / "scan.svg", plot_data)])
    logger.info(f"scan on {l.shape}: {len(points)} points, {len(files)} files")
    return ScanSummaryModel(lattice=l.shape, curves=curves, files=[str(f) for f in files])
