from dataclasses import asdict
from pathlib import Path
from typing import List, Optional
import logging
from app.schemas.run_request import CompileRequestModel
from app.schemas.run_response import CompileSummaryModel, VerificationReportModel
from app.services.trotter.trotter_machine_service import NmrMachine, load_machine
from app.services.trotter.trotter_compile_service import (
    FourBodyVariant,
    VerificationReport,
    compile_four_body,
    compile_trotter_step,
    require_passed,
    verify_four_body,
    verify_trotter_step,
)
from app.services.trotter.trotter_text_service import emit_pulse_text
from app.utils.util_file import resolve_output_dir, write_csv, write_text
from app.utils.util_error_handle import ValidationError

logger = logging.getLogger(__name__)

DEFAULT_MACHINE = Path(__file__).parent.parent.parent.parent / "resource" / "machine" / "sample_machine.json"


def _reports(request_model: CompileRequestModel, m: NmrMachine) -> List[VerificationReport]:
    reports = []
    for variant in FourBodyVariant:
        reports.append(verify_four_body(request_model.J, request_model.tau, m, variant, request_model.threshold))
        reports.append(verify_trotter_step(
            request_model.J, request_model.g, request_model.tau, m, variant, request_model.threshold
        ))
    return reports


def _write_programs(request_model: CompileRequestModel, m: NmrMachine, out: Path) -> List[Path]:
    variant = FourBodyVariant(request_model.variant)
    try:
        step = compile_trotter_step(request_model.J, request_model.g, request_model.tau, m, variant)
        four_body = compile_four_body(request_model.J, request_model.tau, m, variant)
    except ValidationError as e:
        logger.error(f"{variant.value} program cannot be emitted: {e}")
        return []
    return [
        write_text(out / "compile_step.pulse", emit_pulse_text(step, m)),
        write_text(out / "compile_four_body.pulse", emit_pulse_text(four_body, m)),
    ]


def run_compile(request_model: CompileRequestModel, m: Optional[NmrMachine] = None) -> CompileSummaryModel:
    machine = m or load_machine(Path(request_model.machine) if request_model.machine else DEFAULT_MACHINE)
    out = resolve_output_dir(request_model.out)

    reports = _reports(request_model, machine)
    files: List[Path] = [write_csv(
        out / "compile_report.csv", "compile_report",
        ["variant", "target", "distance", "threshold", "passed", "instructions", "free_time", "note"],
        [(r.variant, r.label, r.distance, r.threshold, r.passed, r.instructions, r.free_time, r.note) for r in reports]
    )]
    files += _write_programs(request_model, machine, out)

    selected = [r for r in reports if r.variant == request_model.variant]
    summary = CompileSummaryModel(
        machine=machine.name,
        J=request_model.J,
        g=request_model.g,
        tau=request_model.tau,
        variant=request_model.variant,
        passed=all(r.passed for r in selected),
        reports=[VerificationReportModel(**asdict(r)) for r in reports],
        files=[str(f) for f in files],
    )
    # 報告和程序都寫完後再判定
    for report in selected:
        require_passed(report)
    return summary
