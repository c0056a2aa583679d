"""Exception types shared across the package.

All positions carried by errors are 1-based (row, column) pairs, matching the
convention used in certificates and CLI reports.
"""

from __future__ import annotations


class SchurError(Exception):
    """Base class for every error raised by schurlab."""


class DimensionError(SchurError):
    """Shapes are incompatible or a square matrix was required."""


class ZeroEntryError(SchurError):
    """An entry that must be nonzero is zero (or below the absolute floor)."""

    def __init__(self, message: str, position: tuple[int, int] | None = None):
        super().__init__(message)
        self.position = position


class ConvergenceError(SchurError):
    """An iterative eigenvalue/singular-value computation failed to converge."""


class NotMultiplicativeError(SchurError):
    """The operation requires a multiplicative Schur map and the input is not one."""

    def __init__(self, message: str, residual: float | None = None,
                 witness: tuple | None = None):
        super().__init__(message)
        self.residual = residual
        self.witness = witness


class PreconditionError(SchurError):
    """An operation-specific precondition on the input does not hold."""


class ResourceLimitError(SchurError):
    """The request would exceed a hard resource guard (e.g. 2^(n-1) blowup)."""


class DocumentFormatError(SchurError):
    """A matrix document (JSON or CSV) is malformed."""
