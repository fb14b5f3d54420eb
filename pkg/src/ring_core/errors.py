"""
Exceptions shared by all sumset-squares packages.

Check failures are reported through VerificationReport objects; these
exceptions are reserved for inputs the operations cannot evaluate at all.
"""

from typing import Any, Dict, Optional


class SumsetSquaresError(Exception):
    """Base class for toolkit errors."""


class ModulusMismatchError(SumsetSquaresError, ValueError):
    """Two residue objects live on different moduli."""

    def __init__(self, left: int, right: int, operation: str = ""):
        self.left = left
        self.right = right
        self.operation = operation
        where = f" in {operation}" if operation else ""
        super().__init__(f"Modulus mismatch{where}: {left} != {right}")


class PreconditionError(SumsetSquaresError, ValueError):
    """A documented precondition does not hold for the given input."""

    def __init__(self, message: str, measured: Optional[Dict[str, Any]] = None):
        self.measured = dict(measured or {})
        if self.measured:
            details = ", ".join(f"{k}={v}" for k, v in self.measured.items())
            message = f"{message} ({details})"
        super().__init__(message)


class SearchBudgetExceeded(SumsetSquaresError, RuntimeError):
    """
    A search was refused or stopped before it could prove optimality.

    The best witness found so far (possibly None) is kept on the exception
    with its ``optimal`` flag cleared.
    """

    def __init__(self, message: str, best: Any = None):
        self.best = best
        super().__init__(message)
