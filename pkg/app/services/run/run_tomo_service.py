from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Tuple
import logging
import numpy as np
from app.schemas.run_request import TomoRequestModel
from app.schemas.run_response import StatisticModel, TomoSummaryModel
from app.services.lattice.lattice_geometry_service import Lattice
from app.services.lattice.lattice_operator_service import build_hamiltonian
from app.services.spectra.spectra_dense_service import dense_spectrum
from app.services.observables.observables_density_service import DensityMatrix, deviation, pseudo_pure_state
from app.services.tomography.tomography_record_service import emit_record_text, synth_measure
from app.services.tomography.tomography_reconstruct_service import TomographyReport, reconstruct, tomography_report
from app.services.run.run_scan_service import pair_name
from app.utils.util_file import resolve_output_dir, write_csv, write_text
from app.utils.util_pool import run_pool

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TomoRun:
    seed: int
    report: TomographyReport
    record_text: str
    rho: np.ndarray = field(repr=False)


def prepare_state(J: float, g: float, pps_epsilon: float = 1.0) -> DensityMatrix:
    """2x2 基態；pps_epsilon < 1 時混入最大混態"""
    result = dense_spectrum(build_hamiltonian(Lattice(2, 2), J, g))
    if len(result.ground_group) > 1:
        logger.warning(f"J={J} g={g}: {len(result.ground_group)}-fold ground level, using the first vector")
    return pseudo_pure_state(result.state(0), pps_epsilon)


def _tomo_task(task: Tuple[DensityMatrix, float, int]) -> TomoRun:
    rho, sigma, seed = task
    record = synth_measure(rho, sigma, seed)
    reconstruction = reconstruct(record)
    report = tomography_report(rho, reconstruction)
    return TomoRun(seed, report, emit_record_text(record), np.array(reconstruction.projected.matrix))


def _statistic(values: List[float]) -> StatisticModel:
    return StatisticModel(mean=float(np.mean(values)), std=float(np.std(values)))


def run_tomo(request_model: TomoRequestModel) -> TomoSummaryModel:
    out = resolve_output_dir(request_model.out)
    rho = prepare_state(request_model.J, request_model.g, request_model.pps_epsilon)
    seeds = [request_model.seed + i for i in range(request_model.n_seeds)]

    runs = run_pool(_tomo_task, [(rho, request_model.sigma, seed) for seed in seeds], request_model.workers)
    pairs = list(runs[0].report.concurrences)

    first = runs[0]
    files: List[Path] = [
        write_csv(
            out / "tomo_rho_real.csv", "tomo_rho",
            ["row"] + [f"c{j}" for j in range(first.rho.shape[1])],
            [(i,) + tuple(first.rho[i].real) for i in range(first.rho.shape[0])]
        ),
        write_csv(
            out / "tomo_rho_imag.csv", "tomo_rho",
            ["row"] + [f"c{j}" for j in range(first.rho.shape[1])],
            [(i,) + tuple(first.rho[i].imag) for i in range(first.rho.shape[0])]
        ),
        write_text(out / f"tomo_record_seed{first.seed}.txt", first.record_text),
    ]

    files.append(write_csv(
        out / "tomo_report.csv", "tomo_report",
        ["seed", "fidelity", "fidelity_raw", "wilson_true", "wilson_rec", "P_true", "P_rec", "frobenius"]
        + [f"{pair_name(p)}_true" for p in pairs] + [f"{pair_name(p)}_rec" for p in pairs],
        [
            (r.seed, r.report.fidelity, r.report.fidelity_raw, r.report.wilson_true, r.report.wilson_rec,
             r.report.P_true, r.report.P_rec, r.report.frobenius)
            + tuple(r.report.concurrences[p][0] for p in pairs)
            + tuple(r.report.concurrences[p][1] for p in pairs)
            for r in runs
        ]
    ))

    fidelity = _statistic([r.report.fidelity for r in runs])
    wilson = _statistic([r.report.wilson_rec for r in runs])
    P = _statistic([r.report.P_rec for r in runs])
    concurrences: Dict[str, StatisticModel] = {
        pair_name(p): _statistic([r.report.concurrences[p][1] for r in runs]) for p in pairs
    }
    wilson_deviation = deviation([r.report.wilson_rec for r in runs], [r.report.wilson_true for r in runs])

    summary_rows = [("fidelity", fidelity.mean, fidelity.std), ("wilson", wilson.mean, wilson.std), ("P", P.mean, P.std)]
    summary_rows += [(name, stat.mean, stat.std) for name, stat in concurrences.items()]
    summary_rows.append(("wilson_deviation", wilson_deviation, 0.0))
    files.append(write_csv(out / "tomo_summary.csv", "tomo_summary", ["quantity", "mean", "std"], summary_rows))

    logger.info(f"tomography over {len(seeds)} seeds: mean fidelity {fidelity.mean:.6f}")
    return TomoSummaryModel(
        J=request_model.J,
        g=request_model.g,
        sigma=request_model.sigma,
        seeds=seeds,
        pps_epsilon=request_model.pps_epsilon,
        fidelity=fidelity,
        wilson=wilson,
        P=P,
        concurrences=concurrences,
        wilson_deviation=wilson_deviation,
        files=[str(f) for f in files],
    )
