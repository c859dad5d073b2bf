"""Exception hierarchy shared by every module.

Each error carries a short ``kind`` slug, which the command-line front end
copies into its JSON report.  Exit codes are decided by the base class:
domain errors exit 1, usage/parse errors exit 2, budget overflows exit 3.
"""

from __future__ import annotations


class OrdAlgError(Exception):
    kind = "error"
    exit_code = 1


class UnknownElementError(OrdAlgError):
    kind = "unknown-element"

    def __init__(self, name: str) -> None:
        super().__init__(f"unknown element {name!r}")
        self.name = name


class InvalidElementNameError(OrdAlgError):
    kind = "invalid-element-name"


class NameCollisionError(OrdAlgError):
    kind = "name-collision"


class NotTransitiveError(OrdAlgError):
    """Raised with a witness ``(a, b, c)``: a&b and b&c hold, a&c does not."""

    kind = "not-transitive"

    def __init__(self, witness: tuple[str, str, str]) -> None:
        a, b, c = witness
        super().__init__(f"not transitive: ({a},{b}) and ({b},{c}) present, ({a},{c}) absent")
        self.witness = witness


class NotAnOrderError(OrdAlgError):
    kind = "not-an-order"


class NotAPreorderError(OrdAlgError):
    kind = "not-a-preorder"


class CycleError(OrdAlgError):
    """A directed cycle ``a -> b1 -> ... -> a`` made the result non-irreflexive."""

    kind = "cycle"

    def __init__(self, cycle: list[str], message: str | None = None) -> None:
        super().__init__(message or "directed cycle " + " -> ".join(cycle))
        self.cycle = cycle


class InvalidGapError(OrdAlgError):
    kind = "invalid-gap"


class NotAChainError(OrdAlgError):
    kind = "not-a-chain"


class NotAHalfRayError(OrdAlgError):
    kind = "not-a-half-ray"


class InvalidTransversalError(OrdAlgError):
    kind = "invalid-transversal"


class MultipleIntersectionError(OrdAlgError):
    kind = "multiple-intersection"


class BadIndexError(OrdAlgError):
    kind = "bad-index"


class Condition1Error(OrdAlgError):
    kind = "condition-1-violation"


class Condition2Error(CycleError):
    """Two chains order the same pair of classes oppositely.

    This is the two-element case of a cycle between classes, so it is also
    a :class:`CycleError`.
    """

    kind = "condition-2-violation"


class InvariantError(OrdAlgError):
    """An internally asserted theorem failed; always a bug or a corrupt input."""

    kind = "invariant-violated"


class CapExceededError(OrdAlgError):
    kind = "cap-exceeded"
    exit_code = 3

    def __init__(self, what: str, limit: int, measured: int | None = None) -> None:
        msg = f"{what} exceeds the limit of {limit}"
        if measured is not None:
            msg += f" (measured {measured})"
        super().__init__(msg)
        self.limit = limit
        self.measured = measured


class BudgetExceededError(CapExceededError):
    kind = "budget-exceeded"


class ParseError(OrdAlgError):
    kind = "parse-error"
    exit_code = 2

    def __init__(self, message: str, line: int, column: int = 1, path: str | None = None) -> None:
        where = f"{path}:" if path else ""
        super().__init__(f"{where}{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.path = path


class UsageError(OrdAlgError):
    kind = "usage"
    exit_code = 2


class InvalidPartitionError(OrdAlgError):
    kind = "invalid-partition"
