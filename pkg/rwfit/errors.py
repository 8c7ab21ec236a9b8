"""Exception hierarchy.

Lower layers raise these; the facade and the CLI decide what to do with them.
Each class also derives from the builtin a caller would naturally catch
(ValueError for bad input, RuntimeError for numerical failure).
"""
from __future__ import annotations

from typing import Optional


class RwFitError(Exception):
    """Base class for every error raised by rwfit."""


class DomainError(RwFitError, ValueError):
    """An argument lies outside the domain of the operation."""


class SampleError(DomainError):
    """The sample cannot be used (too small, zero spread, malformed row)."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message)
        self.line = line


class BracketError(RwFitError, ValueError):
    """A root bracket does not contain a sign change."""


class NoSolutionError(RwFitError, ValueError):
    """An estimating equation has no solution in the admissible range."""


class ConvergenceError(RwFitError, RuntimeError):
    """A numerical routine stopped before meeting its tolerance.

    Carries the best value reached so callers may still inspect it.
    """

    def __init__(
        self,
        message: str,
        best_estimate: float = float("nan"),
        error_estimate: float = float("inf"),
    ):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate
