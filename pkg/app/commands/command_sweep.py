import argparse
from uuid import uuid4
from app.commands.command_config import add_common_arguments, load_request
from app.schemas.run_request import SweepRequestModel
from app.services.run.run_sweep_service import run_sweep
from app.utils.util_response import success_response
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import EXIT_SUCCESS, ValidationError, command_exception_handler


def register(subparsers) -> None:
    parser = subparsers.add_parser("sweep", help="adiabatic sweep of J at fixed g")
    add_common_arguments(parser)
    parser.add_argument("--g", type=float, default=None)
    parser.add_argument("--j-min", type=float, default=None, help="sweep start")
    parser.add_argument("--j-max", type=float, default=None, help="sweep end")
    parser.add_argument("--T", type=float, default=None)
    parser.add_argument("--M", type=int, default=None)
    parser.add_argument("--stepper", choices=["exact", "trotter"], default=None)
    parser.add_argument("--slices", type=int, default=None)
    parser.add_argument("--gap-power", type=float, default=None, help="p in r(J) = gap^p / coupling")
    parser.add_argument("--optimize", action=argparse.BooleanOptionalAction, default=None, help="refine J_m at fixed M")
    parser.set_defaults(command="sweep", handler=run)


@command_exception_handler
def run(args: argparse.Namespace) -> int:
    request_model = load_request(SweepRequestModel, args, {
        "g": "g",
        "j_min": "j_start",
        "j_max": "j_end",
        "T": "T",
        "M": "M",
        "stepper": "stepper",
        "slices": "slices",
        "gap_power": "gap_power",
        "optimize": "optimize",
    })
    _error_check(request_model)
    response_model = run_sweep(request_model)
    success_response(
        data=response_model,
        command=args.command,
        run_id=uuid4(),
        request_data=request_model.model_dump()
    )
    return EXIT_SUCCESS


def _error_check(request_model: SweepRequestModel) -> None:
    if request_model.stepper == "trotter" and (request_model.Lx, request_model.Ly) != (2, 2):
        raise ValidationError(
            ServerErrorCode.STEPPER_REQUIRES_2X2_LATTICE_50,
            f"trotter stepper requires a 2x2 lattice, got {request_model.Lx}x{request_model.Ly}"
        )

    if request_model.m_scan is not None and any(M < 2 for M in request_model.m_scan):
        raise ValidationError(ServerErrorCode.REQUEST_PARAMETERS_INVALID_50, "m_scan entries must be >= 2")
