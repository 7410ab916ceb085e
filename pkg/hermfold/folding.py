import functools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from hermfold.errors import FoldingError
from hermfold.galois_field import quadratic_extension, solve_mu_constraint
from hermfold.hermitian_curve import CurvePoint, on_curve
from hermfold.config import DEFAULT_DISTANCE_BUDGET
from hermfold.linear_code import LinearCode, canonical_rref, dual, evaluation_code, min_block_weight

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class HermitianAutomorphism:
    """sigma_{delta,mu}: (x, y) -> (x + delta, y + delta^q x + mu), fixing P_inf."""

    q: int
    delta: int
    mu: int

    def __str__(self):
        return f"σ(δ={self.delta}, μ={self.mu})"


def make_automorphism(curve, delta, mu):
    """Validate mu^q + mu = delta^(q+1) and return the automorphism."""
    d, u = curve.field.element(delta), curve.field.element(mu)
    if u**curve.q + u != d ** (curve.q + 1):
        raise ValueError(f"mu={mu} does not satisfy mu^q + mu = delta^(q+1) for delta={delta}")
    return HermitianAutomorphism(q=curve.q, delta=int(delta), mu=int(mu))


def apply_automorphism(sigma, curve, point):
    """Image of one affine point under sigma."""
    if not on_curve(curve, point):
        raise ValueError(f"point {tuple(point)} is not on the curve")
    gf = curve.field.gf
    x, y = gf(int(point.x)), gf(int(point.y))
    delta, mu = gf(sigma.delta), gf(sigma.mu)
    return CurvePoint(int(x + delta), int(y + delta**sigma.q * x + mu))


@functools.lru_cache(maxsize=None)
def _index_table(curve):
    order = curve.field.order
    table = np.full(order * order, -1, dtype=np.int64)
    table[curve.xs * order + curve.ys] = np.arange(curve.n)
    return table


def point_permutation(sigma, curve):
    """perm[i] is the index of sigma(P_i) in curve order."""
    gf = curve.field.gf
    x, y = gf(curve.xs), gf(curve.ys)
    delta, mu = gf(sigma.delta), gf(sigma.mu)
    new_x = np.asarray(x + delta, dtype=np.int64)
    new_y = np.asarray(y + delta**sigma.q * x + mu, dtype=np.int64)
    perm = _index_table(curve)[new_x * curve.field.order + new_y]
    if np.any(perm < 0):
        raise ValueError(f"{sigma} maps a point off the curve")
    return perm


def automorphism_order(sigma, curve):
    """Least t >= 1 with sigma^t fixing every affine point."""
    perm = point_permutation(sigma, curve)
    identity = np.arange(curve.n)
    power = perm.copy()
    for t in range(1, curve.n + 1):
        if np.array_equal(power, identity):
            return t
        power = perm[power]
    raise ValueError(f"order of {sigma} exceeds q^3")


def automorphism_candidates(curve):
    """sigma_{0,mu} (mu != 0) first, then sigma_{delta,mu} (delta != 0), codes ascending."""
    field = curve.field
    for delta in range(field.order):
        for mu in solve_mu_constraint(field.element(delta), curve.q):
            if delta == 0 and int(mu) == 0:
                continue
            yield HermitianAutomorphism(q=curve.q, delta=delta, mu=int(mu))


def default_automorphism(curve, m, skip=0):
    """First candidate whose order is a multiple of m (skip=1 gives the next one)."""
    _check_divides_length(curve.n, m)
    for sigma in automorphism_candidates(curve):
        if automorphism_order(sigma, curve) % m == 0:
            if skip == 0:
                log.debug("q=%d, m=%d: using %s", curve.q, m, sigma)
                return sigma
            skip -= 1
    raise FoldingError(f"no sigma_(delta,mu) of order divisible by m={m} for q={curve.q}")


def _check_divides_length(n, m):
    if m < 1 or n % m:
        raise FoldingError(f"m does not divide q^3 (m={m}, q^3={n})")


@dataclass(frozen=True)
class FoldChains:
    """Partition of the coordinates into ordered chains of length m."""

    m: int
    chains: tuple

    @property
    def point_order(self):
        return [index for chain in self.chains for index in chain]

    @property
    def N(self):
        return len(self.chains)


def orbit_chains(sigma, curve, m):
    """Cut every sigma-orbit into consecutive chains (P, sigma P, ..., sigma^(m-1) P).

    Orbits are walked from their least unvisited point; the chains are then
    listed by start index.
    """
    _check_divides_length(curve.n, m)
    order = automorphism_order(sigma, curve)
    if order % m:
        raise FoldingError(f"m does not divide order (m={m}, ord={order})")

    perm = point_permutation(sigma, curve)
    visited = np.zeros(curve.n, dtype=bool)
    chains = []
    for start in range(curve.n):
        if visited[start]:
            continue
        orbit = [start]
        while (nxt := int(perm[orbit[-1]])) != start:
            orbit.append(nxt)
        if len(orbit) % m:
            raise FoldingError(f"chain collision: orbit of point {start} has size {len(orbit)}, not a multiple of m={m}")
        visited[orbit] = True
        chains.extend(tuple(orbit[i : i + m]) for i in range(0, len(orbit), m))
    chains.sort(key=lambda chain: chain[0])

    log.info("%s: %d chains of length %d", sigma, len(chains), m)
    return FoldChains(m=m, chains=tuple(chains))


def consecutive_chains(n, m):
    """Blocks of m consecutive coordinates (the cyclic folding of Reed-Solomon codes)."""
    _check_divides_length(n, m)
    return FoldChains(m=m, chains=tuple(tuple(range(i, i + m)) for i in range(0, n, m)))


@dataclass(frozen=True, eq=False)
class FoldedCode:
    """A code whose coordinates, ordered chain by chain, are read m at a time."""

    code: LinearCode
    chains: FoldChains

    @property
    def m(self):
        return self.chains.m

    @property
    def N(self):
        return self.code.n // self.m

    @property
    def dimension(self):
        return Fraction(self.code.k, self.m)

    @property
    def rate(self):
        return self.dimension / self.N

    @property
    def designed_distance(self):
        if self.code.designed_distance is None:
            return None
        return math.ceil(self.code.designed_distance / self.m)

    def blocks(self, words):
        arr = np.asarray(words)
        return arr.reshape(arr.shape[0], self.N, self.m)

    def __eq__(self, other):
        if not isinstance(other, FoldedCode):
            return NotImplemented
        return self.chains == other.chains and self.code == other.code

    __hash__ = None

    def __str__(self):
        d = self.designed_distance
        return f"[{self.N}, {format_fraction(self.dimension)}, {'≥' + str(d) if d is not None else '?'}]"


def format_fraction(value):
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def fold_code(code, chains):
    """Group coordinates into the m-blocks of `chains`.

    The code must already be laid out chain by chain.
    """
    if code.points is None or list(code.points) != chains.point_order:
        raise FoldingError("coordinate order mismatch: evaluate the code in chain order before folding")
    return FoldedCode(code=code, chains=chains)


def fold_hermitian(curve, r, chains):
    """C(D, rP_inf)^(sigma,m), evaluated directly in chain order."""
    return fold_code(evaluation_code(curve, r, chains.point_order), chains)


def unfold(fc):
    """Concatenate the blocks back into the underlying code."""
    return fc.code


def folded_dual(fc):
    """(C^perp)^(m) on the same chains."""
    return fold_code(dual(fc.code), fc.chains)


def _blockwise_products(gf, a, b):
    """sum_i a^(i) . b^(i) for stacks of folded words shaped (rows, N, m)."""
    products = gf.Zeros((a.shape[0], b.shape[0]))
    for i in range(a.shape[1]):
        products += gf(a[:, i, :]) @ gf(b[:, i, :]).T
    return products


def blockwise_dual(fc):
    """Dual under the blockwise inner product sum_i c^(i) . w^(i), computed directly.

    The functional w -> <g, w> of every generator g is tabulated on the unit
    folded words e_(i,j), block by block, in position-major column order; its
    kernel is then mapped back to chain order.
    """
    gf = fc.code.field.gf
    n, m = fc.code.n, fc.m
    if fc.code.k == 0:
        basis = gf.Identity(n)
    elif fc.code.k == n:
        basis = gf.Zeros((0, n))
    else:
        blocks = fc.blocks(fc.code.generator)
        units = np.eye(m, dtype=np.int64)[:, np.newaxis, :]
        column = {(i, j): j * fc.N + i for i in range(fc.N) for j in range(m)}
        functionals = gf.Zeros((fc.code.k, n))
        for i in range(fc.N):
            # e_(i,j) pairs with nothing outside block i
            cols = [column[(i, j)] for j in range(m)]
            functionals[:, cols] = _blockwise_products(gf, blocks[:, i : i + 1, :], units)
        kernel = functionals.null_space()
        basis = gf.Zeros((kernel.shape[0], n))
        basis[:, [i * m + j for (i, j) in sorted(column, key=column.get)]] = kernel
        basis = canonical_rref(basis)
    code = LinearCode(field=fc.code.field, generator=basis, label=f"blockwise dual of {fc.code.label}", points=fc.code.points)
    return FoldedCode(code=code, chains=fc.chains)


def blockwise_inner_products(fc, other):
    """Matrix of blockwise inner products between the generators of two folded codes."""
    gf = fc.code.field.gf
    return _blockwise_products(gf, fc.blocks(fc.code.generator), other.blocks(other.code.generator))


def fold_dual_commutes(fc):
    """Check (C^(m))^perp = (C^perp)^(m) by generator pairs, dimensions and matrices."""
    dual_fold = folded_dual(fc)
    orthogonal = not np.any(np.asarray(blockwise_inner_products(fc, dual_fold)) != 0)
    dims_add_up = fc.dimension + dual_fold.dimension == fc.N
    return orthogonal and dims_add_up and dual_fold.code == blockwise_dual(fc).code


def folded_min_distance(fc, budget=DEFAULT_DISTANCE_BUDGET):
    """Exact minimum block weight of a folded code, by enumeration."""
    return min_block_weight(fc.code, budget, block=fc.m)


def fold_reed_solomon(q, k, m):
    """[q^2-1, k] Reed-Solomon code on the orbit 1, gamma, gamma^2, ... folded m at a time."""
    field = quadratic_extension(q)
    n = field.order - 1
    if n % m:
        raise FoldingError(f"m={m} does not divide q^2-1={n}")
    if not 1 <= k <= n:
        raise ValueError(f"k={k} outside [1, {n}]")
    gf = field.gf
    orbit = gf.primitive_element ** np.arange(n)
    rows = gf.Zeros((k, n))
    rows[0] = gf.Ones(n)
    for i in range(1, k):
        rows[i] = rows[i - 1] * orbit
    code = LinearCode(
        field=field,
        generator=canonical_rref(rows),
        label=f"RS[{n}, {k}]",
        points=tuple(range(n)),
        designed_distance=n - k + 1,
    )
    return fold_code(code, consecutive_chains(n, m))


def chains_report(chains):
    return "\n".join(" ".join(str(i) for i in chain) for chain in chains.chains)
