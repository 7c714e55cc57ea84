import argparse
from uuid import uuid4
from app.commands.command_config import add_common_arguments, load_request
from app.schemas.run_request import TomoRequestModel
from app.services.run.run_tomo_service import run_tomo
from app.utils.util_response import success_response
from app.utils.util_error_map import ServerErrorCode
from app.utils.util_error_handle import EXIT_SUCCESS, ValidationError, command_exception_handler


def register(subparsers) -> None:
    parser = subparsers.add_parser("tomo", help="noisy Pauli tomography of the 2x2 ground state")
    add_common_arguments(parser)
    parser.add_argument("--g", type=float, default=None)
    parser.add_argument("--sigma", type=float, default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.set_defaults(command="tomo", handler=run)


@command_exception_handler
def run(args: argparse.Namespace) -> int:
    request_model = load_request(TomoRequestModel, args, {"g": "g", "sigma": "sigma", "seed": "seed"})
    _error_check(request_model)
    response_model = run_tomo(request_model)
    success_response(
        data=response_model,
        command=args.command,
        run_id=uuid4(),
        request_data=request_model.model_dump()
    )
    return EXIT_SUCCESS


def _error_check(request_model: TomoRequestModel) -> None:
    if request_model.sigma < 0:
        raise ValidationError(ServerErrorCode.NOISE_SIGMA_NEGATIVE_57, f"sigma={request_model.sigma}")

    if not 0.0 <= request_model.pps_epsilon <= 1.0:
        raise ValidationError(ServerErrorCode.REQUEST_PARAMETERS_INVALID_50, "pps_epsilon must lie in [0, 1]")

    if request_model.seed < 0:
        raise ValidationError(ServerErrorCode.REQUEST_PARAMETERS_INVALID_50, "seed must be >= 0")
