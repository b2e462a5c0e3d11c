"""Exception hierarchy.

Two families matter to callers: :class:`SpecError` for malformed or
inconsistent inputs (bad parameters, mismatched grids, off-lattice shifts)
and :class:`PreconditionError` for numerical preconditions that fail at run
time (Nyquist violations, truncation estimates, non-admissible wavelets).
The command line maps them to exit codes 2 and 3.
"""


class TFCompactError(Exception):
    """Base class for all errors raised by this package."""


class SpecError(TFCompactError, ValueError):
    """Invalid specification, parameter or grid combination."""

    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key


class PreconditionError(TFCompactError, ValueError):
    """A numerical precondition of an operation does not hold."""


class ScaleRangeError(PreconditionError):
    """The scale grid is too narrow for the coefficient mass of a signal."""
