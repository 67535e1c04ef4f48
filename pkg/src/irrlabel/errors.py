"""Exception hierarchy shared by the library and the command line.

Every exception carries the process exit code the CLI reports for it.
"""

from __future__ import annotations


class IrrlabelError(Exception):
    exit_code = 5


class InputError(IrrlabelError, ValueError):
    """Malformed or out-of-contract input."""

    exit_code = 2


class StructuralError(InputError):
    """Operands belong to different groups."""


class UnsupportedClassError(InputError):
    """No constructive route exists and the oracle is disabled."""


class InfeasibleError(IrrlabelError):
    """Exhaustive search proved that no solution exists."""

    exit_code = 3

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ResourceError(IrrlabelError):
    """A size cap or search budget was exceeded; the answer is unknown."""

    exit_code = 4


class ConstructionError(IrrlabelError):
    """A construction failed or produced output its verifier rejected."""

    exit_code = 5
