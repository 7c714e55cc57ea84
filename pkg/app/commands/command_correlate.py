import argparse
from uuid import uuid4
from app.commands.command_config import add_common_arguments, load_request
from app.schemas.run_request import CorrelateRequestModel
from app.services.run.run_correlate_service import run_correlate
from app.utils.util_response import success_response
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import EXIT_SUCCESS, ValidationError, command_exception_handler


def register(subparsers) -> None:
    parser = subparsers.add_parser("correlate", help="spin correlations on a 2xN strip")
    add_common_arguments(parser)
    parser.add_argument("--g", type=float, default=None)
    parser.set_defaults(command="correlate", handler=run)


@command_exception_handler
def run(args: argparse.Namespace) -> int:
    request_model = load_request(CorrelateRequestModel, args, {"g": "g"})
    _error_check(request_model)
    response_model = run_correlate(request_model)
    success_response(
        data=response_model,
        command=args.command,
        run_id=uuid4(),
        request_data=request_model.model_dump()
    )
    return EXIT_SUCCESS


def _error_check(request_model: CorrelateRequestModel) -> None:
    # 比值 J/g 需要 g > 0
    if request_model.g <= 0:
        raise ValidationError(ServerErrorCode.REQUEST_PARAMETERS_INVALID_50, "g must be > 0 for J/g ratios")

    if not request_model.ratios:
        raise ValidationError(ServerErrorCode.REQUEST_PARAMETERS_INVALID_50, "ratios is empty")
