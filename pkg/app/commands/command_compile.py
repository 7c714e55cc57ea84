import argparse
from uuid import uuid4
from app.commands.command_config import add_common_arguments, load_request
from app.schemas.run_request import CompileRequestModel
from app.services.run.run_compile_service import run_compile
from app.utils.util_response import success_response
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import EXIT_SUCCESS, ValidationError, command_exception_handler


def register(subparsers) -> None:
    parser = subparsers.add_parser("compile", help="compile and verify one Trotter step as NMR pulses")
    add_common_arguments(parser)
    parser.add_argument("--g", type=float, default=None)
    parser.add_argument("--machine", type=str, default=None, help="machine description JSON")
    parser.set_defaults(command="compile", handler=run)


@command_exception_handler
def run(args: argparse.Namespace) -> int:
    request_model = load_request(CompileRequestModel, args, {"g": "g", "machine": "machine"})
    _error_check(request_model)
    response_model = run_compile(request_model)
    success_response(
        data=response_model,
        command=args.command,
        run_id=uuid4(),
        request_data=request_model.model_dump()
    )
    return EXIT_SUCCESS


def _error_check(request_model: CompileRequestModel) -> None:
    if request_model.tau < 0:
        raise ValidationError(ServerErrorCode.REQUEST_PARAMETERS_INVALID_50, "tau must be >= 0")

    if request_model.threshold is not None and request_model.threshold <= 0:
        raise ValidationError(ServerErrorCode.REQUEST_PARAMETERS_INVALID_50, "threshold must be > 0")
