"""Shared exception types."""


class DomainError(ValueError):
    """Input outside an operation's mathematical domain."""


class BudgetError(RuntimeError):
    """An enumeration would exceed its candidate-cell budget.

    Carries the offending size so callers can report a structured message.
    """

    def __init__(self, needed, budget):
        super().__init__(f"enumeration needs {needed} candidate cells, budget is {budget}")
        self.needed = needed
        self.budget = budget


class VerificationError(RuntimeError):
    """A certificate or tower check failed."""
