from pathlib import Path
from typing import List, Tuple
import logging
import numpy as np
from app.schemas.run_request import CorrelateRequestModel
from app.schemas.run_response import CorrelateSummaryModel, CorrelationRowModel
from app.services.lattice.lattice_geometry_service import Lattice
from app.services.observables.observables_correlation_service import CorrelationTable, spin_correlations
from app.services.run.run_plot_service import plot_correlations
from app.utils.util_file import resolve_output_dir, write_csv, write_plots_last
from app.utils.util_pool import run_pool

logger = logging.getLogger(__name__)


def _correlate_task(task: Tuple[int, int, float, float, str]) -> CorrelationTable:
    Lx, Ly, J, g, basis = task
    return spin_correlations(Lattice(Lx, Ly), J, g, basis)


def run_correlate(request_model: CorrelateRequestModel) -> CorrelateSummaryModel:
    l = Lattice(request_model.Lx, request_model.Ly)
    out = resolve_output_dir(request_model.out)
    g = request_model.g
    ratios = [float(r) for r in request_model.ratios]

    tasks = [(l.Lx, l.Ly, ratio * g, g, request_model.basis) for ratio in ratios]
    tables = run_pool(_correlate_task, tasks, request_model.workers)

    rows = []
    summary_rows: List[CorrelationRowModel] = []
    for ratio, table in zip(ratios, tables):
        entries = table.rows_from(0)
        rows += [(ratio, table.J, g, k, distance, raw, connected, table.method) for k, distance, raw, connected in entries]
        offsite = [(raw, connected) for k, _, raw, connected in entries if k != 1]
        summary_rows.append(CorrelationRowModel(
            ratio=ratio,
            J=table.J,
            method=table.method,
            max_offsite_raw=float(max(abs(r) for r, _ in offsite)),
            max_offsite_connected=float(max(abs(c) for _, c in offsite)),
        ))

    files: List[Path] = [write_csv(
        out / "correlate.csv", "correlate",
        ["ratio", "J", "g", "k", "distance", "raw", "connected", "method"],
        rows
    )]
    heatmap = np.array([table.raw[0] for table in tables])
    sites = [k + 1 for k in l.sites()]
    files += write_plots_last([lambda: plot_correlations(out / "correlate.svg", ratios, sites, heatmap)])

    logger.info(f"correlations on {l.shape} for {len(ratios)} ratios")
    return CorrelateSummaryModel(
        lattice=l.shape,
        g=g,
        basis=request_model.basis,
        rows=summary_rows,
        files=[str(f) for f in files],
    )
