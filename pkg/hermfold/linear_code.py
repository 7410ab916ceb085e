import functools
import itertools
import logging
import math
from dataclasses import dataclass

import numpy as np

from hermfold.config import DEFAULT_DISTANCE_BUDGET
from hermfold.errors import BudgetExceededError, ContainmentError, DistanceUnavailableError
from hermfold.galois_field import Field
from hermfold.hermitian_curve import evaluate_monomials, monomial_basis

log = logging.getLogger(__name__)

CODEWORD_CHUNK = 2**15


def canonical_rref(matrix):
    """Reduced row-echelon form with the zero rows removed."""
    if matrix.shape[0] == 0:
        return matrix
    reduced = matrix.row_reduce()
    return reduced[np.any(np.asarray(reduced) != 0, axis=1)]


def stack_rows(gf, *matrices):
    n = next(m.shape[1] for m in matrices)
    parts = [np.asarray(m, dtype=np.int64).reshape(-1, n) for m in matrices]
    return gf(np.vstack(parts))


@dataclass(frozen=True, eq=False)
class LinearCode:
    """Subspace of GF(q^2)^n held as a canonical RREF generator matrix.

    Two codes are equal exactly when their RREF matrices are identical.
    `points` lists the curve point index of every coordinate for evaluation
    codes, and `designed_distance` is the AG bound n - r when known.
    """

    field: Field
    generator: object
    label: str = ""
    points: tuple | None = None
    designed_distance: int | None = None

    @property
    def n(self):
        return self.generator.shape[1]

    @property
    def k(self):
        return self.generator.shape[0]

    @functools.cached_property
    def parity_check(self):
        return dual(self).generator

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return (
            self.field.gf is other.field.gf
            and self.generator.shape == other.generator.shape
            and np.array_equal(np.asarray(self.generator), np.asarray(other.generator))
        )

    __hash__ = None

    def __str__(self):
        return f"{self.label or 'code'} [{self.n}, {self.k}]"


def from_generator(field, rows, label="", points=None, designed_distance=None):
    """Row-reduce any spanning set into a LinearCode."""
    matrix = field.gf(np.asarray(rows, dtype=np.int64))
    return LinearCode(
        field=field,
        generator=canonical_rref(matrix),
        label=label,
        points=tuple(points) if points is not None else None,
        designed_distance=designed_distance,
    )


def _point_indices(curve, point_order):
    if point_order is None:
        return list(range(curve.n))
    indices = [p if isinstance(p, (int, np.integer)) else curve.index_of(p) for p in point_order]
    if sorted(indices) != list(range(curve.n)):
        raise ValueError("point_order is not a permutation of the affine points")
    return indices


def evaluation_code(curve, r, point_order=None):
    """C(D, rP_inf): evaluations of the L(rP_inf) basis at the points in the given order.

    Args:
        curve: HermitianCurve
        r: Pole order bound, 0 <= r < q^3
        point_order: Points (CurvePoint or index) in coordinate order, default curve order

    Returns:
        LinearCode of dimension l(rP_inf) with designed distance n - r
    """
    basis = monomial_basis(curve, r)
    indices = _point_indices(curve, point_order)
    matrix = evaluate_monomials(curve, basis, indices)
    code = LinearCode(
        field=curve.field,
        generator=canonical_rref(matrix),
        label=f"C(D, {r}P∞)",
        points=tuple(indices),
        designed_distance=curve.n - r,
    )
    if code.k != len(basis):
        log.warning("evaluation matrix for r=%d has rank %d < %d monomials", r, code.k, len(basis))
    log.debug("built %s over %s", code, curve.field)
    return code


def dual(code):
    """Kernel dual {w : G w^T = 0} in canonical form."""
    gf = code.field.gf
    n = code.n
    if code.k == 0:
        basis = gf.Identity(n)
    elif code.k == n:
        basis = gf.Zeros((0, n))
    else:
        basis = canonical_rref(code.generator.null_space())
    return LinearCode(field=code.field, generator=basis, label=f"({code.label})^⊥" if code.label else "", points=code.points)


def herm_dual_degree(q, r):
    """Degree of the one-point code equal to C(D, rP_inf)^⊥: q^3 + q^2 - q - 2 - r."""
    alpha = q**3 + q**2 - q - 2 - r
    if r < 0 or alpha < 0:
        raise ValueError(f"r={r} outside [0, {q**3 + q**2 - q - 2}]")
    return alpha


def duality_degrees(q):
    """Degrees r with both r and its dual degree strictly between 2g - 2 and q^3."""
    genus = q * (q - 1) // 2
    n = q**3
    return [r for r in range(2 * genus - 1, n) if 2 * genus - 2 < herm_dual_degree(q, r) < n]


def dual_matches_formula(curve, r):
    """dual(C(D, rP_inf)) == C(D, alpha P_inf) as canonical matrices."""
    alpha = herm_dual_degree(curve.q, r)
    return dual(evaluation_code(curve, r)) == evaluation_code(curve, alpha)


def _check_compatible(a, b):
    if a.field.gf is not b.field.gf:
        raise ValueError(f"field mismatch: {a.field} and {b.field}")
    if a.n != b.n:
        raise ValueError(f"length mismatch: {a.n} and {b.n}")


def rank(field, *matrices):
    return canonical_rref(stack_rows(field.gf, *matrices)).shape[0]


def contains(outer, inner):
    """True iff every generator of `inner` lies in the row space of `outer`."""
    _check_compatible(outer, inner)
    if inner.k == 0:
        return True
    return rank(outer.field, outer.generator, inner.generator) == outer.k


def code_sum(a, b):
    _check_compatible(a, b)
    return from_generator(a.field, stack_rows(a.field.gf, a.generator, b.generator), points=a.points)


def intersection(a, b):
    """a ∩ b computed as the dual of dual(a) + dual(b)."""
    return dual(code_sum(dual(a), dual(b)))


def block_weights(words, block=1):
    """Number of nonzero blocks of `block` consecutive coordinates in each row."""
    arr = np.asarray(words)
    blocks = arr.reshape(arr.shape[0], -1, block)
    return np.count_nonzero(np.any(blocks != 0, axis=2), axis=1)


def message_digits(start, stop, k, base):
    """Base-`base` digits (least significant first) of the integers start..stop-1."""
    idx = np.arange(start, stop, dtype=np.int64)
    return (idx[:, np.newaxis] // base ** np.arange(k, dtype=np.int64)) % base


def codeword_count(code):
    return code.field.order**code.k


def iter_codewords(code, budget=DEFAULT_DISTANCE_BUDGET, chunk=CODEWORD_CHUNK):
    """Yield every codeword, `chunk` at a time, as rows of a field array."""
    total = codeword_count(code)
    if total > budget:
        raise BudgetExceededError(total, budget, what=f"codeword enumeration of {code}")
    gf = code.field.gf
    for start in range(0, total, chunk):
        messages = gf(message_digits(start, min(start + chunk, total), code.k, code.field.order))
        yield messages @ code.generator


def in_code_mask(code, words):
    """Boolean mask of the rows of `words` that are codewords."""
    syndromes = np.asarray(words @ code.parity_check.T)
    return ~np.any(syndromes != 0, axis=1)


@dataclass(frozen=True)
class DistanceResult:
    """Minimum distance, either exact or the designed lower bound."""

    value: int
    exact: bool
    method: str

    def __str__(self):
        return f"{self.value}" if self.exact else f"≥{self.value}"


def _support_scan_cost(code):
    return sum(math.comb(code.n, w) for w in range(1, code.n - code.k + 2))


def _support_scan(code):
    # the smallest support whose parity-check columns are dependent carries a codeword
    check = code.parity_check
    for weight in range(1, code.n - code.k + 2):
        for support in itertools.combinations(range(code.n), weight):
            if canonical_rref(check[:, list(support)]).shape[0] < weight:
                return weight
    return code.n - code.k + 1


def min_block_weight(code, budget=DEFAULT_DISTANCE_BUDGET, block=1):
    """Least (block) weight of a nonzero codeword, by full enumeration."""
    if code.k == 0:
        raise ValueError("the zero code has no minimum distance")
    best = code.n // block
    for chunk in iter_codewords(code, budget):
        weights = block_weights(chunk, block)
        nonzero = weights[weights > 0]
        if nonzero.size:
            best = min(best, int(nonzero.min()))
    return best


def min_distance(code, budget=DEFAULT_DISTANCE_BUDGET):
    """Minimum Hamming distance, exact when enumeration fits the budget.

    Enumerates whichever is smaller: all codewords, or coordinate supports
    tested against the parity-check columns. Over budget, returns the
    designed distance marked as a lower bound.
    """
    if code.k == 0:
        raise ValueError("the zero code has no minimum distance")
    if code.k == code.n:
        return DistanceResult(1, True, "full space")
    words = codeword_count(code)
    supports = _support_scan_cost(code)
    if min(words, supports) <= budget:
        if words <= supports:
            return DistanceResult(min_block_weight(code, budget), True, "exhaustive")
        return DistanceResult(_support_scan(code), True, "support-scan")
    if code.designed_distance is not None:
        log.warning("%s: %d codewords over budget %d, reporting designed distance", code, words, budget)
        return DistanceResult(code.designed_distance, False, "designed")
    raise DistanceUnavailableError(code.label)


def weight_of_set_difference(a, b, budget=DEFAULT_DISTANCE_BUDGET, block=1):
    """Minimum (block) weight over codewords of `a` outside `b`.

    Returns None when the difference is empty (a == b).
    """
    if not contains(a, b):
        raise ContainmentError(f"{b.label or 'B'} ⊄ {a.label or 'A'}")
    best = None
    for chunk in iter_codewords(a, budget):
        outside = ~in_code_mask(b, chunk)
        if np.any(outside):
            weight = int(block_weights(np.asarray(chunk)[outside], block).min())
            best = weight if best is None else min(best, weight)
    return best


def export_matrix(code):
    """Field header, `n k`, then the generator rows as element codes."""
    lines = [code.field.header(), f"{code.n} {code.k}"]
    lines.extend(" ".join(str(int(v)) for v in row) for row in np.asarray(code.generator))
    return "\n".join(lines) + "\n"


def write_matrix(code, path):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(export_matrix(code))
    log.info("wrote %s to %s", code, path)
