import os
from dataclasses import dataclass
from fractions import Fraction

# Enumeration caps (number of vectors visited)
DEFAULT_DISTANCE_BUDGET = 2**24
DEFAULT_ENUMERATION_BUDGET = 2**22

SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9, 16)
MAX_FIELD_ORDER = 2**16

# Degree r of C(D, rP_inf) used by each row of the published parameter table (C1 = C2)
TABLE1_DEGREES = {
    4: 48,
    5: 95,
    7: 245,
    8: 416,
    16: 3584,
}

TABLE1_ROWS = ((4, 2), (4, 4), (5, 5), (7, 7), (8, 2), (8, 4), (16, 2), (16, 4))

# Published (N, k, d) triples: classical folded code, then the quantum code.
# Fractions compare by value, so the printed 266/4 equals 133/2.
TABLE1_EXPECTED = {
    (4, 2): ((32, Fraction(43, 2), 8), (32, Fraction(11), 8)),
    (4, 4): ((16, Fraction(43, 4), 4), (16, Fraction(11, 2), 4)),
    (5, 5): ((25, Fraction(86, 5), 6), (25, Fraction(47, 5), 6)),
    (7, 7): ((49, Fraction(225, 7), 14), (49, Fraction(107, 7), 14)),
    (8, 2): ((256, Fraction(389, 2), 48), (256, Fraction(133), 48)),
    (8, 4): ((128, Fraction(389, 4), 24), (128, Fraction(266, 4), 24)),
    (16, 2): ((2048, Fraction(3465, 2), 256), (2048, Fraction(1417), 256)),
    (16, 4): ((1024, Fraction(3465, 4), 128), (1024, Fraction(2834, 4), 128)),
}

# Results store location, overridable from the environment
RESULTS_DATABASE_URL = os.environ.get("HERMFOLD_DATABASE_URL", "sqlite:///hermfold_results.db")

OUTPUT_FORMATS = ("text", "records")


@dataclass
class RunConfig:
    """Parameters of one CLI invocation."""

    subcommand: str
    distance_budget: int = DEFAULT_DISTANCE_BUDGET
    enumeration_budget: int = DEFAULT_ENUMERATION_BUDGET
    output_format: str = "text"
    seed: int = 0
    store_url: str | None = None

    def validate(self):
        """Reject budgets and formats the operations cannot honour."""
        if self.distance_budget <= 0:
            raise ValueError(f"distance budget must be positive, got {self.distance_budget}")
        if self.enumeration_budget <= 0:
            raise ValueError(f"enumeration budget must be positive, got {self.enumeration_budget}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"unknown output format '{self.output_format}'")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")
        return self
