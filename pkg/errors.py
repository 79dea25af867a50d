# errors.py
"""Error hierarchy. Every error carries the CLI exit code of its family."""


class HydrocastError(Exception):
    exit_code = 3

    def __init__(self, message: str, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def with_context(self, **context) -> "HydrocastError":
        self.context.update(context)
        return self

    def to_dict(self) -> dict:
        return {
            "error": self.message,
            "type": type(self).__name__,
            "context": {k: str(v) for k, v in self.context.items()},
        }


# ---------- families ----------
class ConfigurationError(HydrocastError):
    exit_code = 1


class DataError(HydrocastError):
    exit_code = 2


class NumericalError(HydrocastError):
    exit_code = 3


# ---------- data ----------
class NonHourlySpacing(DataError):
    pass


class DuplicateTimestamp(DataError):
    pass


class UnparseableRow(DataError):
    def __init__(self, message: str, row: int, **context):
        super().__init__(message, row=row, **context)
        self.row = row


class InsufficientData(DataError):
    pass


class SeriesTooShort(DataError):
    pass


class MissingLag(DataError):
    pass


class WindowTooShort(DataError):
    pass


class MissingInWindow(WindowTooShort):
    pass


class EmptyBucket(DataError):
    def __init__(self, message: str, bucket, **context):
        super().__init__(message, bucket=bucket, **context)
        self.bucket = bucket


class DimensionMismatch(DataError):
    pass


class WindowExceedsHorizon(DataError):
    pass


class EmptyGrid(DataError):
    pass


class ZeroVarianceActuals(DataError):
    pass


# ---------- numerical ----------
class UnstableProcess(NumericalError):
    pass


class NegativeVarianceParams(NumericalError):
    pass


class AllColumnsConstant(NumericalError):
    pass


class DegenerateTarget(NumericalError):
    pass


class SingularToeplitz(NumericalError):
    pass


class DegenerateDifferential(NumericalError):
    pass


class UnfittedModel(NumericalError):
    pass


# ---------- configuration ----------
class InvalidDegree(ConfigurationError):
    pass


class InsufficientSpacing(ConfigurationError):
    pass


class UnknownMode(ConfigurationError):
    pass


class UnknownModel(ConfigurationError):
    pass


# ---------- warnings ----------
class HydrocastWarning(UserWarning):
    pass


class MaxSweepsExceeded(HydrocastWarning):
    pass


class NonMonotoneQuantiles(HydrocastWarning):
    pass
