from pathlib import Path
from typing import List, Optional
import logging
from app.schemas.run_request import SweepRequestModel
from app.schemas.run_response import MScanPointModel, SweepSummaryModel
from app.services.lattice.lattice_geometry_service import Lattice
from app.services.adiabatic.adiabatic_schedule_service import discretize, make_schedule
from app.services.adiabatic.adiabatic_optimize_service import optimize_sweep
from app.services.adiabatic.adiabatic_evolve_service import (
    Stepper,
    evolve,
    initial_ground_state,
    min_fidelity_scan,
)
from app.services.observables.observables_density_service import deviation
from app.services.run.run_plot_service import plot_sweep
from app.services.run.run_scan_service import theory_curves
from app.utils.util_file import resolve_output_dir, write_csv, write_plots_last

logger = logging.getLogger(__name__)


def run_sweep(request_model: SweepRequestModel) -> SweepSummaryModel:
    l = Lattice(request_model.Lx, request_model.Ly)
    out = resolve_output_dir(request_model.out)
    g = request_model.g

    schedule = make_schedule(g, request_model.j_start, request_model.j_end, request_model.T, l, gap_power=request_model.gap_power)
    sweep = discretize(schedule, request_model.M)
    psi0 = initial_ground_state(l, g, request_model.j_start)
    if request_model.optimize:
        sweep = optimize_sweep(l, g, sweep, psi0)
    result = evolve(l, g, sweep.J_list, sweep.tau, psi0, Stepper(request_model.stepper), request_model.slices)

    theory = [theory_curves(r.J, g) for r in result.records]
    files: List[Path] = []
    files.append(write_csv(
        out / "sweep_steps.csv", "sweep_steps",
        ["m", "t", "J", "fidelity", "wilson", "P", "energy", "ground_energy", "wilson_theory", "P_theory"],
        [
            (r.m, r.t, r.J, r.fidelity, r.wilson, r.P, r.energy, r.ground_energy, w_th, p_th)
            for r, (w_th, p_th) in zip(result.records, theory)
        ]
    ))
    files.append(write_csv(out / "sweep_schedule.csv", "sweep_schedule", ["t", "J", "r"], schedule.to_rows()))

    m_scan: Optional[List[MScanPointModel]] = None
    if request_model.m_scan:
        curve = min_fidelity_scan(
            g, request_model.j_start, request_model.j_end, request_model.T, request_model.m_scan,
            l, Stepper(request_model.stepper), request_model.slices, request_model.workers,
            gap_power=request_model.gap_power, optimize=request_model.optimize
        )
        files.append(write_csv(out / "sweep_mscan.csv", "sweep_mscan", ["M", "min_fidelity"], curve))
        m_scan = [MScanPointModel(M=M, min_fidelity=F) for M, F in curve]

    schedule_rows = schedule.to_rows()
    steps = [(r.t, r.J, r.fidelity) for r in result.records]
    files += write_plots_last([lambda: plot_sweep(out / "sweep.svg", schedule_rows, steps)])

    return SweepSummaryModel(
        lattice=l.shape,
        g=g,
        T=request_model.T,
        M=request_model.M,
        stepper=result.stepper,
        slices=result.slices,
        gap_power=request_model.gap_power,
        optimized=sweep.optimized,
        adiabaticity_c=schedule.adiabaticity_c,
        min_fidelity=result.min_fidelity,
        final_fidelity=result.records[-1].fidelity,
        wilson_deviation=deviation([r.wilson for r in result.records], [t[0] for t in theory]),
        P_deviation=deviation([r.P for r in result.records], [t[1] for t in theory]),
        m_scan=m_scan,
        files=[str(f) for f in files],
    )
