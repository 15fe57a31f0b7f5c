"""Exception types shared across the package."""

from __future__ import annotations


class PartitiError(Exception):
    """Base class for all package-specific errors."""


class InputRangeError(PartitiError, ValueError):
    """An argument is outside its documented range."""


class ShapeError(PartitiError, ValueError):
    """Two grids that must share dimensions do not."""


class ParseError(PartitiError, ValueError):
    """A document failed strict parsing.

    ``locus`` is an optional (row, col) pair pointing at the offending cell.
    """

    def __init__(self, message: str, locus: tuple[int, int] | None = None):
        if locus is not None:
            message = f"{message} at ({locus[0]},{locus[1]})"
        super().__init__(message)
        self.locus = locus


class PreconditionError(PartitiError, ValueError):
    """An operation was invoked on a state that violates its precondition.

    Carries the offending ``violations`` when the precondition is
    rule-conformance of a player state.
    """

    def __init__(self, message: str, violations=None):
        super().__init__(message)
        self.violations = list(violations) if violations else []


class SizeGuardError(PartitiError, ValueError):
    """A brute-force operation would exceed its safety bound."""


class GenerationError(PartitiError, RuntimeError):
    """Puzzle generation exhausted its attempt budget.

    Attempt statistics are attached so callers can tell *why* generation
    failed (fill dead-ends vs. non-unique grids vs. difficulty mismatch).
    """

    def __init__(self, message: str, *, attempts: int, fill_failures: int,
                 non_unique: int, difficulty_mismatches: int, unproven: int):
        super().__init__(message)
        self.attempts = attempts
        self.fill_failures = fill_failures
        self.non_unique = non_unique
        self.difficulty_mismatches = difficulty_mismatches
        self.unproven = unproven
