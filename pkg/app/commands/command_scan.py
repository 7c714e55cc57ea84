import argparse
from uuid import uuid4
from app.commands.command_config import add_common_arguments, load_request
from app.schemas.run_request import ScanRequestModel
from app.services.run.run_scan_service import run_scan
from app.utils.util_response import success_response
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import EXIT_SUCCESS, ValidationError, command_exception_handler


def register(subparsers) -> None:
    parser = subparsers.add_parser("scan", help="ground-state phase diagram over a J grid")
    add_common_arguments(parser)
    parser.add_argument("--g", type=float, default=None)
    parser.add_argument("--j-min", type=float, default=None)
    parser.add_argument("--j-max", type=float, default=None)
    parser.add_argument("--j-points", type=int, default=None)
    parser.set_defaults(command="scan", handler=run)


@command_exception_handler
def run(args: argparse.Namespace) -> int:
    request_model = load_request(ScanRequestModel, args, {
        "g": "g_list",
        "j_min": "j_min",
        "j_max": "j_max",
        "j_points": "j_points",
    })
    _error_check(request_model)
    response_model = run_scan(request_model)
    success_response(
        data=response_model,
        command=args.command,
        run_id=uuid4(),
        request_data=request_model.model_dump()
    )
    return EXIT_SUCCESS


def _error_check(request_model: ScanRequestModel) -> None:
    if not request_model.g_list:
        raise ValidationError(ServerErrorCode.REQUEST_PARAMETERS_INVALID_50, "g_list is empty")

    if any(g < 0 for g in request_model.g_list):
        raise ValidationError(ServerErrorCode.REQUEST_PARAMETERS_INVALID_50, "transverse fields must be >= 0")

    if request_model.j_min >= request_model.j_max:
        raise ValidationError(ServerErrorCode.REQUEST_PARAMETERS_INVALID_50, "j_min must be below j_max")
