import functools
import logging
import sys
from typing import Callable, Optional, Sequence

logger = logging.getLogger(__name__)

# CLI exit codes
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_SIZE_LIMIT = 4
EXIT_UNKNOWN_SOLVER = 5


class GedGmError(Exception):
    """Base error; every subclass carries the exit code the CLI reports"""

    exit_code = EXIT_FAILURE


class InputFileError(GedGmError):
    exit_code = EXIT_PARSE


class GraphParseError(GedGmError):
    exit_code = EXIT_PARSE

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        self.message = message
        self.line = line
        self.field = field
        context = []
        if line is not None:
            context.append(f"line {line}")
        if field:
            context.append(f"field '{field}'")
        if context:
            message = f"{message} ({', '.join(context)})"
        super().__init__(message)


class CostConfigError(GedGmError):
    exit_code = EXIT_PARSE


class GraphValidationError(GedGmError):
    exit_code = EXIT_VALIDATION


class InfeasibleAssignmentError(GedGmError):
    exit_code = EXIT_VALIDATION


class EditPathError(GedGmError):
    exit_code = EXIT_VALIDATION


class DatasetError(GedGmError):
    exit_code = EXIT_VALIDATION


class SolverConfigError(GedGmError):
    exit_code = EXIT_VALIDATION


class SizeLimitError(GedGmError):
    exit_code = EXIT_SIZE_LIMIT


class UnknownSolverError(GedGmError):
    exit_code = EXIT_UNKNOWN_SOLVER

    def __init__(self, name: str, valid: Sequence[str]):
        self.name = name
        self.valid = tuple(valid)
        super().__init__(f"Unknown solver '{name}'. Valid solvers: {', '.join(self.valid)}")


class LsapInputError(GedGmError, ValueError):
    exit_code = EXIT_VALIDATION


class ExperimentError(GedGmError):
    exit_code = EXIT_FAILURE


def handle_cli_errors(func: Callable[..., int]) -> Callable[..., int]:
    """
    Map exceptions raised by a command handler to an error message and exit code
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> int:
        try:
            return func(*args, **kwargs)
        except GedGmError as exc:
            logger.debug("Command failed", exc_info=True)
            print(f"error: {exc}", file=sys.stderr)
            return exc.exit_code
        except Exception as exc:
            logger.exception("Unexpected failure")
            print(f"error: internal error: {exc}", file=sys.stderr)
            return EXIT_FAILURE

    return wrapper
