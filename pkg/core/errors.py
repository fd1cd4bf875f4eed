"""
Errors — Refusals and Traps

Two families live here. Input errors and algebraic refusals describe a
request the library cannot honour (bad index, malformed file, a loop that
lacks the structure an operation needs). Traps are assertions over proved
statements or internal consistency: they must abort loudly and are never
swallowed.
"""

from __future__ import annotations

from typing import Any


class HalfloopError(Exception):
    """Base class for every error raised by the library."""

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> dict[str, Any]:
        return {"error": type(self).__name__, "message": self.message, **self.details}


# ── Input errors (exit code 1) ────────────────────────────────────


class InputError(HalfloopError, ValueError):
    pass


class ParseError(InputError):
    """Malformed or non-Latin table, located by row and column when known."""

    def __init__(self, message: str, row: int | None = None, column: int | None = None):
        super().__init__(message, row=row, column=column)
        self.row = row
        self.column = column


class PreconditionError(InputError):
    pass


class NotASubloop(InputError):
    pass


class NotProper(PreconditionError):
    pass


class SourceNotMoufang(PreconditionError):
    pass


class TargetNotMoufang(PreconditionError):
    pass


# ── Algebraic refusals (exit code 1) ──────────────────────────────


class TwoSidedInverseAbsent(HalfloopError):
    def __init__(self, element: int, right_inverse: int, left_inverse: int):
        super().__init__(
            f"element {element} has right inverse {right_inverse} but left inverse {left_inverse}",
            element=element,
            right_inverse=right_inverse,
            left_inverse=left_inverse,
        )
        self.element = element
        self.right_inverse = right_inverse
        self.left_inverse = left_inverse


class NotPowerAssociative(HalfloopError):
    def __init__(self, element: int, witness: tuple[int, int, int]):
        super().__init__(
            f"<{element}> is not associative at {witness}",
            element=element,
            witness=list(witness),
        )
        self.element = element
        self.witness = witness


class NotDiassociative(HalfloopError):
    def __init__(self, generators: tuple[int, int], witness: tuple[int, int, int]):
        super().__init__(
            f"<{generators[0]}, {generators[1]}> is not associative at {witness}",
            generators=list(generators),
            witness=list(witness),
        )
        self.generators = generators
        self.witness = witness


# ── Traps (exit code 2) ───────────────────────────────────────────


class TrapError(HalfloopError):
    pass


class InvariantViolation(TrapError):
    pass


class NormalityWitnessError(TrapError):
    def __init__(self, message: str, x: int, y: int):
        super().__init__(message, x=x, y=y)
        self.x = x
        self.y = y


class TheoremViolation(TrapError):
    pass
