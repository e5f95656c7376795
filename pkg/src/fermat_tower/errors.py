"""Exception hierarchy shared across the package.

Plain precondition violations (bad config values, out-of-range indices,
malformed arguments) raise ValueError; inversion of an exact zero raises
ZeroDivisionError.  Everything with domain meaning gets a class here so the
CLI can map failures to distinct exit codes.
"""


class FermatTowerError(Exception):
    """Base class for domain errors raised by this package."""


class BitBudgetError(FermatTowerError):
    """A prime-schedule entry would exceed the configured bit-size budget."""

    def __init__(self, index, bits, max_bits):
        super().__init__(
            f"schedule entry {index} needs ~{bits} bits, budget is {max_bits}"
        )
        self.index = index
        self.bits = bits
        self.max_bits = max_bits


class BudgetExhaustedError(FermatTowerError):
    """A bounded search ran out of budget.

    Deliberately ambiguous between "budget too small" and "no such object":
    the searches only halt when the target exists.
    """

    def __init__(self, message, level=None):
        super().__init__(message)
        self.level = level


class InsufficientBoundError(FermatTowerError):
    """An enumeration bound was too small to collect the required witnesses."""


class InvariantViolationError(FermatTowerError):
    """An exact check that theory guarantees has failed.

    Either an implementation bug or (for unchecked multi-level prime lists)
    a genuinely surprising algebraic fact; never suppress, always surface.
    """


class SubstitutionSingularityError(FermatTowerError):
    """A denominator vanished while evaluating a generator substitution."""


class EmbeddingCorruptionError(InvariantViolationError):
    """A synthesized embedding hit an impossible state (e.g. zero denominator)."""


class GroundTruthUnavailableError(FermatTowerError):
    """Ground-truth accessor called on a presentation that has none."""


class EliminationFailureError(FermatTowerError):
    """The resultant-based elimination produced no usable witness."""
