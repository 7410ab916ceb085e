"""Exception types raised by the library.

All of them derive from ValueError: every failure here is a bad argument or
an argument the enumeration budget cannot accommodate.
"""


class BudgetExceededError(ValueError):
    def __init__(self, required, budget, what="enumeration"):
        self.required = required
        self.budget = budget
        super().__init__(f"{what} over budget: needs {required} steps, budget is {budget}")


class ContainmentError(ValueError):
    """A required code inclusion does not hold; the message names it."""


class FoldingError(ValueError):
    """Invalid folding parameter, chain collision or coordinate order mismatch."""


class DistanceUnavailableError(ValueError):
    def __init__(self, label=None):
        super().__init__(f"distance unavailable{f' for {label}' if label else ''}")
