"""Exception hierarchy.  Each class carries a stable ``code`` used by the CLI."""

from __future__ import annotations


class QciError(Exception):
    code = "E_GENERIC"
    exit_status = 2


class FieldError(QciError):
    code = "E_FIELD"


class RingMismatchError(QciError):
    """Operands live over different fields or variable sets."""

    code = "E_RING_MISMATCH"


class ParseError(QciError):
    code = "E_SYNTAX"

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class NotHomogeneousError(QciError):
    code = "E_NOT_HOMOGENEOUS"


class NotArtinianError(QciError):
    code = "E_NOT_ARTINIAN"

    def __init__(self, message: str, ray: int | None = None):
        super().__init__(message)
        self.ray = ray


class NonMinimalError(QciError):
    code = "E_NOT_MINIMAL"


class DegreeError(QciError):
    """Wrong degree or shape for the requested operation."""

    code = "E_DEGREE"


class UnsupportedError(QciError):
    code = "E_UNSUPPORTED"


class MalformedSeriesError(QciError):
    code = "E_SERIES"


class BoundsError(QciError):
    code = "E_BOUNDS"


class InternalInconsistency(QciError):
    """A mathematically guaranteed verification failed: a bug trap."""

    code = "E_INTERNAL"
    exit_status = 3
