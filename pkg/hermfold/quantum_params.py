import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import pandas as pd

from hermfold.config import DEFAULT_DISTANCE_BUDGET, TABLE1_DEGREES, TABLE1_EXPECTED
from hermfold.errors import BudgetExceededError, ContainmentError, FoldingError
from hermfold.folding import (
    FoldChains,
    FoldedCode,
    blockwise_dual,
    default_automorphism,
    fold_code,
    fold_dual_commutes,
    fold_hermitian,
    fold_reed_solomon,
    folded_dual,
    format_fraction,
    orbit_chains,
)
from hermfold.hermitian_curve import curve_create, riemann_roch_dim
from hermfold.linear_code import (
    LinearCode,
    codeword_count,
    contains,
    dual,
    evaluation_code,
    herm_dual_degree,
    intersection,
    min_block_weight,
    min_distance,
    weight_of_set_difference,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DistanceBound:
    """A distance value with where it came from.

    `value` is None when nothing could be certified within budget.
    """

    value: int | None
    exact: bool
    provenance: str

    def __str__(self):
        if self.value is None:
            return "?"
        return str(self.value) if self.exact else f"≥{self.value}"


def format_classical(N, k, d):
    return f"[{N}, {format_fraction(k)}, {d}]"


def format_quantum(N, k, d, ebits=None):
    tail = f"; {format_fraction(ebits)}" if ebits is not None else ""
    return f"[[{N}, {format_fraction(k)}, {d}{tail}]]"


def as_folded(code):
    """View an unfolded code as a 1-folded code on its own coordinate order."""
    if isinstance(code, FoldedCode):
        return code
    points = code.points if code.points is not None else tuple(range(code.n))
    if code.points is None:
        code = LinearCode(code.field, code.generator, code.label, points, code.designed_distance)
    return fold_code(code, FoldChains(m=1, chains=tuple((p,) for p in points)))


@dataclass(frozen=True, eq=False)
class CssCode:
    """CSS(C1, C2) with C2^perp ⊆ C1, parameters in folded units.

    `distance` is the best certified folded distance; `folded_bound` is
    ceil(min{d(C1), d(C2)} / m) and `unfolded_distance` the set-difference
    minimum before folding.
    """

    c1: FoldedCode
    c2: FoldedCode
    k: Fraction
    rate: Fraction
    distance: DistanceBound
    folded_bound: DistanceBound
    unfolded_distance: DistanceBound
    checks: dict = field(default_factory=dict)

    @property
    def N(self):
        return self.c1.N

    @property
    def m(self):
        return self.c1.m

    @property
    def n(self):
        return self.c1.code.n

    @property
    def c1_dual(self):
        return dual(self.c1.code)

    @property
    def c2_dual(self):
        return dual(self.c2.code)

    def __str__(self):
        return format_quantum(self.N, self.k, self.distance)


def _set_difference_min(pairs, budget, block):
    """min over the given (A, B) pairs of wt(A minus B); None when every difference is empty.

    Raises BudgetExceededError when some A cannot be enumerated within budget.
    """
    weights = []
    for a, b in pairs:
        if codeword_count(a) > budget:
            raise BudgetExceededError(codeword_count(a), budget, what=f"set-difference enumeration of {a}")
        weight = weight_of_set_difference(a, b, budget, block)
        if weight is not None:
            weights.append(weight)
    return min(weights) if weights else None


def css_params(c1, c2, budget=DEFAULT_DISTANCE_BUDGET):
    """Parameters of CSS(C1, C2).

    Args:
        c1: LinearCode or FoldedCode
        c2: LinearCode or FoldedCode on the same chains
        budget: Codeword enumeration cap for exact distances

    Returns:
        CssCode with exact k and the best distance the budget allows
    """
    c1, c2 = as_folded(c1), as_folded(c2)
    if c1.chains != c2.chains:
        raise FoldingError("chain mismatch between C1 and C2")
    n, m = c1.code.n, c1.m
    c2_dual = dual(c2.code)
    if not contains(c1.code, c2_dual):
        raise ContainmentError(f"C2^⊥ ⊄ C1 ({c2.code.label or 'C2'}^⊥ is not inside {c1.code.label or 'C1'})")
    c1_dual = dual(c1.code)

    k = Fraction(c1.code.k + c2.code.k - n, m)
    rate = Fraction(c1.code.k, n) + Fraction(c2.code.k, n) - 1

    d1, d2 = min_distance(c1.code, budget), min_distance(c2.code, budget)
    bound = DistanceBound(
        math.ceil(min(d1.value, d2.value) / m),
        False,
        "exact d(C_i)" if d1.exact and d2.exact else "designed d(C_i)",
    )
    pairs = ((c1.code, c2_dual), (c2.code, c1_dual))
    try:
        unfolded = _set_difference_min(pairs, budget, 1)
        folded = _set_difference_min(pairs, budget, m) if m > 1 else unfolded
    except BudgetExceededError:
        unfolded_bound = DistanceBound(min(d1.value, d2.value), False, "min{d1, d2}")
        distance = bound
    else:
        if unfolded is None:
            # C1 = C2^perp: no logical operator to weigh
            unfolded_bound = distance = DistanceBound(None, False, "empty set difference")
        else:
            unfolded_bound = DistanceBound(unfolded, True, "set-difference exhaustion")
            distance = DistanceBound(folded, True, "folded set-difference exhaustion")

    log.info("CSS code %s (k=%s)", format_quantum(c1.N, k, distance), k)
    return CssCode(
        c1=c1,
        c2=c2,
        k=k,
        rate=rate,
        distance=distance,
        folded_bound=bound,
        unfolded_distance=unfolded_bound,
        checks={"C2^⊥ ⊆ C1": True},
    )


@dataclass(frozen=True)
class FqhcParams:
    """Parameters of the folded quantum Hermitian code from its formulas alone."""

    q: int
    r1: int
    r2: int
    m: int
    alpha: int
    N: int
    k: Fraction
    d_bound: int

    def __str__(self):
        return format_quantum(self.N, self.k, f"≥{self.d_bound}")


def fqhc_formula(q, r1, r2, m):
    """[[q^3/m, (l(r1) - l(alpha))/m, >= ceil(min{n - r1, n - r2}/m)]] with alpha = q^3+q^2-q-2-r2."""
    curve = curve_create(q)
    n = curve.n
    alpha = herm_dual_degree(q, r2)
    if alpha >= n:
        raise ContainmentError(f"alpha={alpha} >= q^3: C2^⊥ is not a one-point code of degree below n")
    k = Fraction(riemann_roch_dim(curve, r1) - riemann_roch_dim(curve, alpha), m)
    return FqhcParams(
        q=q,
        r1=r1,
        r2=r2,
        m=m,
        alpha=alpha,
        N=n // m,
        k=k,
        d_bound=math.ceil(min(n - r1, n - r2) / m),
    )


def fqhc_construct(q, r1, r2, m, sigma=None, budget=DEFAULT_DISTANCE_BUDGET):
    """Build both folded codes on shared chains and the CSS code between them.

    Accepts either ordering of r1 and r2; C2^perp ⊆ C1 is the gate.

    Returns:
        Tuple of (CssCode, FqhcParams)
    """
    curve = curve_create(q)
    for r in (r1, r2):
        if not 0 <= r < curve.n:
            raise ValueError(f"r={r} outside [0, {curve.n})")
    alpha = herm_dual_degree(q, r2)
    if alpha > r1:
        raise ContainmentError(f"C2^⊥ = C(D, {alpha}P∞) ⊄ C1 = C(D, {r1}P∞)")

    sigma = sigma or default_automorphism(curve, m)
    chains = orbit_chains(sigma, curve, m)
    c1 = fold_hermitian(curve, r1, chains)
    c2 = c1 if r2 == r1 else fold_hermitian(curve, r2, chains)

    css = css_params(c1, c2, budget)
    params = fqhc_formula(q, r1, r2, m)

    c2_dual = folded_dual(c2)
    css.checks["(C2^(m))^⊥ = (C2^⊥)^(m)"] = c2_dual.code == blockwise_dual(c2).code and fold_dual_commutes(c2)
    css.checks["C2^⊥ = C(D, αP∞)"] = c2_dual.code == evaluation_code(curve, alpha, chains.point_order)
    css.checks["formula matches matrices"] = (params.N, params.k) == (css.N, css.k)
    log.info("FQHC q=%d r1=%d r2=%d m=%d via %s: %s", q, r1, r2, m, sigma, params)
    return css, params


@dataclass(frozen=True)
class RateRadius:
    rate: Fraction
    tau: Fraction
    balanced_rate: Fraction
    balanced_tau: Fraction

    @property
    def guaranteed(self):
        return self.tau > 0

    @property
    def note(self):
        return "" if self.guaranteed else "no list-decoding guarantee"


def fqhc_rate_radius(r1, r2, eps):
    """Quantum rate and list-decoding radius from the two classical rates.

    tau = min{1 - R1, 1 - R2} - eps; the balanced choice R1 = R2 = (1 + R)/2
    reaches (1 - R)/2 - eps.
    """
    r1, r2, eps = Fraction(r1), Fraction(r2), Fraction(eps)
    for rate in (r1, r2):
        if not 0 <= rate <= 1:
            raise ValueError(f"rate {rate} outside [0, 1]")
    if r1 + r2 < 1:
        raise ValueError(f"R1 + R2 = {r1 + r2} < 1 gives no CSS code")
    rate = r1 + r2 - 1
    return RateRadius(
        rate=rate,
        tau=min(1 - r1, 1 - r2) - eps,
        balanced_rate=(1 + rate) / 2,
        balanced_tau=(1 - rate) / 2 - eps,
    )


def balanced_radius_grid(rate_sum, eps=0, max_denominator=64):
    """Radius for every split R1 + R2 = rate_sum with denominators up to max_denominator."""
    rate_sum, eps = Fraction(rate_sum), Fraction(eps)
    splits = sorted(
        {
            Fraction(num, den)
            for den in range(1, max_denominator + 1)
            for num in range(den + 1)
            if 0 <= rate_sum - Fraction(num, den) <= 1
        }
    )
    records = []
    for r1 in splits:
        result = fqhc_rate_radius(r1, rate_sum - r1, eps)
        records.append({"R1": r1, "R2": rate_sum - r1, "tau": result.tau, "balanced": r1 == rate_sum / 2})
    return pd.DataFrame(records)


def balanced_is_optimal(grid):
    """The balanced split attains the maximum radius and every other split is strictly below."""
    best = grid["tau"].max()
    balanced = grid[grid["balanced"]]
    others = grid[~grid["balanced"]]
    return len(balanced) == 1 and balanced["tau"].iloc[0] == best and bool((others["tau"] < best).all())


def table1(q, m, level="matrix", budget=DEFAULT_DISTANCE_BUDGET, sigma=None):
    """One row of the folded Hermitian parameter table.

    Args:
        q: Field parameter of a published row
        m: Folding parameter of a published row
        level: "matrix" builds the folded codes, "formula" uses Riemann-Roch only
        budget: Distance enumeration budget
        sigma: Folding automorphism, default rule when None

    Returns:
        Dictionary with the classical and quantum triples
    """
    if (q, m) not in TABLE1_EXPECTED:
        raise ValueError(f"unknown table row q={q}, m={m}")
    r = TABLE1_DEGREES[q]
    params = fqhc_formula(q, r, r, m)
    n = q**3
    classical_k = Fraction(riemann_roch_dim(curve_create(q), r), m)
    row = {
        "q": q,
        "m": m,
        "r": r,
        "N": params.N,
        "k_classical": classical_k,
        "d_classical": math.ceil((n - r) / m),
        "k_quantum": params.k,
        "d_quantum": params.d_bound,
        "alphabet": alphabet_size(q, m),
        "level": level,
    }
    if level == "matrix":
        css, _ = fqhc_construct(q, r, r, m, sigma=sigma, budget=budget)
        row["k_classical"] = css.c1.dimension
        row["k_quantum"] = css.k
        row["d_classical"] = css.c1.designed_distance
        row["d_quantum"] = css.folded_bound.value
        row["checks_passed"] = all(css.checks.values())
    elif level != "formula":
        raise ValueError(f"unknown level '{level}'")

    expected_c, expected_q = TABLE1_EXPECTED[(q, m)]
    row["matches_published"] = (row["N"], row["k_classical"], row["d_classical"]) == expected_c and (
        row["N"],
        row["k_quantum"],
        row["d_quantum"],
    ) == expected_q
    row["classical"] = format_classical(row["N"], row["k_classical"], f"≥{row['d_classical']}")
    row["quantum"] = format_quantum(row["N"], row["k_quantum"], f"≥{row['d_quantum']}")
    return row


def table1_frame(rows):
    return pd.DataFrame(rows)


def table1_records(frame):
    """`q m N kc_num kc_den dc N kq_num kq_den dq` per row."""
    lines = []
    for _, row in frame.iterrows():
        kc, kq = Fraction(row["k_classical"]), Fraction(row["k_quantum"])
        fields = (row["q"], row["m"], row["N"], kc.numerator, kc.denominator, row["d_classical"])
        fields += (row["N"], kq.numerator, kq.denominator, row["d_quantum"])
        lines.append(" ".join(str(int(v)) for v in fields))
    return "\n".join(lines)


def table1_rank_check(q):
    """Rank of the full C(D, rP_inf) evaluation matrix for a table row (slow for q=16)."""
    curve = curve_create(q)
    r = TABLE1_DEGREES[q]
    code = evaluation_code(curve, r)
    return code.k, riemann_roch_dim(curve, r)


def rs_css(q, k, m, budget=DEFAULT_DISTANCE_BUDGET):
    """CSS code of a folded Reed-Solomon code with itself, for comparison."""
    folded = fold_reed_solomon(q, k, m)
    return css_params(folded, folded, budget)


def alphabet_size(q, m):
    """Folded symbols live in GF(q^2)^m."""
    return q ** (2 * m)


@dataclass(frozen=True)
class EaParams:
    """[[N, k_EA, d_EA; c]] entanglement-assisted parameters in folded units."""

    N: int
    k: Fraction
    distance: DistanceBound
    ebits: Fraction
    case: str

    def __str__(self):
        return format_quantum(self.N, self.k, self.distance, self.ebits)


def ebits_unfolded(c1, c2):
    """k1 - dim(C1 ∩ C2^perp) on the unfolded codes (an integer)."""
    return c1.k - intersection(c1, dual(c2)).k


def _block_weight_or_none(code, budget, block):
    if code.k == 0:
        return None
    if codeword_count(code) > budget:
        raise BudgetExceededError(codeword_count(code), budget)
    return min_block_weight(code, budget, block)


def ea_params(c1, c2, budget=DEFAULT_DISTANCE_BUDGET):
    """Entanglement-assisted parameters of two folded codes on the same chains.

    No containment is required; c counts the ebits consumed.
    """
    if c1.chains != c2.chains:
        raise FoldingError("chain mismatch between C1 and C2")
    m, N = c1.m, c1.N
    c1_dual = blockwise_dual(c1).code
    c2_dual = blockwise_dual(c2).code

    dim1, dim2 = c1.dimension, c2.dimension
    ebits = dim1 - Fraction(intersection(c1.code, c2_dual).k, m)
    k_ea = N - dim1 - dim2 + ebits

    if contains(c2.code, c1_dual):
        case = "C1^⊥ ⊆ C2"
        try:
            weights = [_block_weight_or_none(code, budget, m) for code in (c1_dual, c2_dual)]
            weights = [w for w in weights if w is not None]
            distance = DistanceBound(min(weights) if weights else None, False, case)
        except BudgetExceededError:
            distance = DistanceBound(None, False, f"unavailable ({case})")
    else:
        case = "general"
        pairs = (
            (c1_dual, intersection(c2.code, c1_dual)),
            (c2_dual, intersection(c2_dual, c1.code)),
        )
        try:
            weight = _set_difference_min(pairs, budget, m)
            distance = DistanceBound(weight, False, case if weight is not None else f"empty set difference ({case})")
        except BudgetExceededError:
            distance = DistanceBound(None, False, f"unavailable ({case})")

    log.info("EA code N=%d k=%s c=%s (%s)", N, k_ea, ebits, case)
    return EaParams(N=N, k=k_ea, distance=distance, ebits=ebits, case=case)
