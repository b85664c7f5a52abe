"""Exception hierarchy shared by every module."""

from __future__ import annotations


class CoboundError(Exception):
    """Base class for all library errors."""


class InputError(CoboundError, ValueError):
    """Malformed or out-of-range input."""


class DuplicateVertexInFace(InputError):
    pass


class EmptyInput(InputError):
    pass


class InvalidDimension(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class EmptyCodomain(InputError):
    """The (i+1)-faces needed by a coboundary-based quantity do not exist."""


class NotCompleteComplex(InputError):
    pass


# the sum-function tester names its precondition failure this way
NotComplete = NotCompleteComplex


class NotAGraph(InputError):
    pass


class NotSymmetric(InputError):
    pass


class BadDiagonal(InputError):
    pass


class BadEntry(InputError):
    pass


class VertexOutOfRange(InputError):
    pass


class VertexSetMismatch(InputError):
    pass


class ParseError(InputError):
    pass


class BudgetExceeded(CoboundError):
    """An exhaustive enumeration would exceed the caller's budget.

    ``required`` is the enumeration size that was refused. ``partial`` may
    carry results that were computed before the refusal.
    """

    def __init__(self, required: int, budget: int, what: str = "enumeration",
                 partial: dict | None = None):
        self.required = required
        self.budget = budget
        self.what = what
        self.partial = dict(partial or {})
        super().__init__(f"{what} needs {required} steps, budget is {budget}")
