import argparse
import logging
from functools import wraps
from typing import Any, Callable, Dict, Optional, Sequence
from pydantic import ValidationError as PydanticValidationError
from app.utils.util_error_map import ERROR_CODE_TO_MESSAGE, ServerErrorCode
from app.utils.util_response import error_response

logger = logging.getLogger(__name__)

EXIT_SUCCESS = 0
EXIT_FAILURE = 1
EXIT_VALIDATION = 2
EXIT_VERIFICATION = 3


class SimulationError(Exception):
    exit_code: int = EXIT_FAILURE

    def __init__(self, code: int, detail: Optional[str] = None):
        self.code = code
        self.detail = detail
        message = ERROR_CODE_TO_MESSAGE.get(code, f"Error code {code}")
        super().__init__(f"{message}: {detail}" if detail else message)

    def to_dict(self) -> Dict[str, Any]:
        return {"code": self.code, "message": str(self)}


class ValidationError(SimulationError):
    exit_code = EXIT_VALIDATION


class DimensionError(SimulationError):
    exit_code = EXIT_VALIDATION


class CapacityError(SimulationError):
    exit_code = EXIT_VALIDATION


class DomainError(SimulationError):
    exit_code = EXIT_VALIDATION


class MachineError(SimulationError):
    exit_code = EXIT_VALIDATION

    def __init__(self, code: int, detail: Optional[str] = None, coupling: Optional[str] = None):
        self.coupling = coupling
        super().__init__(code, detail)


class IncompletenessError(SimulationError):
    exit_code = EXIT_VALIDATION

    def __init__(self, code: int, missing: Sequence[str]):
        self.missing = list(missing)
        shown = ", ".join(self.missing[:16])
        if len(self.missing) > 16:
            shown += f", ... ({len(self.missing)} total)"
        super().__init__(code, f"missing words: {shown}")


class ConvergenceError(SimulationError):
    exit_code = EXIT_FAILURE

    def __init__(self, code: int, residuals: Sequence[float], iterations: int):
        self.residuals = [float(r) for r in residuals]
        self.iterations = iterations
        worst = max(self.residuals) if self.residuals else float("nan")
        super().__init__(code, f"{iterations} iterations, worst residual {worst:.3e}")


class VerificationError(SimulationError):
    exit_code = EXIT_VERIFICATION

    def __init__(self, code: int, distance: float, threshold: float, label: str = ""):
        self.distance = float(distance)
        self.threshold = float(threshold)
        prefix = f"{label}: " if label else ""
        super().__init__(code, f"{prefix}distance {self.distance:.6e} > threshold {self.threshold:.1e}")


# 統一異常處理裝飾器：子命令返回 exit code
def command_exception_handler(func: Callable[..., int]) -> Callable[..., int]:
    @wraps(func)
    def wrapper(*args, **kwargs) -> int:
        namespace: Optional[argparse.Namespace] = None
        for arg in list(args) + list(kwargs.values()):
            if isinstance(arg, argparse.Namespace):
                namespace = arg
                break
        command = getattr(namespace, "command", func.__name__)

        try:
            return func(*args, **kwargs)
        except SimulationError as e:
            logger.error(f"{command} failed: {e}")
            error_response(e.code, str(e), command=command, extra=_error_extra(e))
            return e.exit_code
        except PydanticValidationError as e:
            logger.error(f"{command} config rejected: {e}")
            error_response(ServerErrorCode.REQUEST_PARAMETERS_INVALID_50, str(e), command=command)
            return EXIT_VALIDATION
        except (OSError, ValueError) as e:
            logger.error(f"{command} failed: {e}", exc_info=True)
            error_response(ServerErrorCode.SIMULATION_RUN_FAILED_50, str(e), command=command)
            return EXIT_FAILURE
        except Exception as e:
            logger.error(f"Unexpected error in {command}: {e}", exc_info=True)
            error_response(ServerErrorCode.INTERNAL_ERROR_50, str(e), command=command)
            return EXIT_FAILURE

    return wrapper


def _error_extra(error: SimulationError) -> Optional[Dict[str, Any]]:
    if isinstance(error, VerificationError):
        return {"distance": error.distance, "threshold": error.threshold}
    if isinstance(error, ConvergenceError):
        return {"residuals": error.residuals, "iterations": error.iterations}
    if isinstance(error, IncompletenessError):
        return {"missing": error.missing}
    if isinstance(error, MachineError) and error.coupling:
        return {"coupling": error.coupling}
    return None


