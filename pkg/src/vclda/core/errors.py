"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations

from typing import Optional

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2


class VcldaError(Exception):
    """Base class for every error raised by vclda."""

    exit_code: int = EXIT_NUMERICAL


class UsageError(VcldaError, ValueError):
    """Bad input supplied by the caller (shape, id, file contents)."""

    exit_code = EXIT_USAGE


class NumericalError(VcldaError, ArithmeticError):
    """An estimator could not produce a well-defined result."""

    exit_code = EXIT_NUMERICAL


class InvalidDimensionError(UsageError):
    pass


class DimensionMismatchError(UsageError):
    pass


class UnknownScenarioError(UsageError):
    pass


class ConfigError(UsageError):
    pass


class ModelFileError(UsageError):
    pass


class DatasetParseError(UsageError):
    """A dataset CSV could not be parsed; ``row`` is 1-based and counts the header."""

    def __init__(
        self, message: str, row: Optional[int] = None, column: Optional[str] = None
    ):
        self.row = row
        self.column = column
        location = []
        if row is not None:
            location.append(f"row {row}")
        if column is not None:
            location.append(f"column '{column}'")
        prefix = ", ".join(location)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class SingularGramError(NumericalError):
    pass


class SingularSystemError(NumericalError):
    pass


class SingularCovarianceError(NumericalError):
    pass


class NonPositiveDefiniteError(NumericalError):
    pass


class DegenerateScaleError(NumericalError):
    pass


class ZeroDirectionError(NumericalError):
    pass


class InfeasibleGridError(NumericalError):
    pass


class NonConvergenceError(NumericalError):
    pass


class TrialFailedError(NumericalError):
    """A benchmark trial failed; carries what is needed to replay it."""

    def __init__(self, trial: int, seed: int, cause: BaseException):
        self.trial = trial
        self.seed = seed
        self.cause = cause
        super().__init__(
            f"Trial {trial} failed (replay with seed {seed}): "
            f"{type(cause).__name__}: {cause}"
        )
        if isinstance(cause, VcldaError):
            self.exit_code = cause.exit_code
