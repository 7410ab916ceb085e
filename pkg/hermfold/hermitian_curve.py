import functools
import logging
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from hermfold.galois_field import Field, quadratic_extension, split_prime_power

log = logging.getLogger(__name__)

MAX_CURVE_Q = 16


class CurvePoint(NamedTuple):
    """Affine point, coordinates given by their element codes."""

    x: int
    y: int


@dataclass(frozen=True)
class Monomial:
    """x^i y^j, a basis function of L(rP_inf) when 0 <= j <= q-1."""

    i: int
    j: int
    q: int

    @property
    def pole_order(self):
        return self.i * self.q + self.j * (self.q + 1)

    def __str__(self):
        parts = [f"x^{self.i}" if self.i > 1 else "x" * self.i, f"y^{self.j}" if self.j > 1 else "y" * self.j]
        return "".join(parts) or "1"


@dataclass(frozen=True, eq=False)
class HermitianCurve:
    """Affine part of y^q + y = x^(q+1) over GF(q^2).

    P_inf is never stored; a one-point divisor rP_inf is the integer r.
    """

    q: int
    field: Field
    genus: int
    points: tuple
    xs: np.ndarray
    ys: np.ndarray

    @property
    def n(self):
        return len(self.points)

    def index_of(self, point):
        return self._index[tuple(point)]

    @functools.cached_property
    def _index(self):
        return {tuple(p): i for i, p in enumerate(self.points)}


@functools.lru_cache(maxsize=None)
def curve_create(q):
    """Enumerate the affine rational points of the Hermitian curve.

    Args:
        q: Prime power, at most 16

    Returns:
        HermitianCurve with the q^3 points sorted by (x code, y code)
    """
    split_prime_power(q)
    if q > MAX_CURVE_Q:
        raise ValueError(f"unsupported q={q}; prime powers up to {MAX_CURVE_Q} are supported")

    field = quadratic_extension(q)
    elems = field.elements
    norms = np.asarray(elems ** (q + 1), dtype=np.int64)
    traces = np.asarray(elems**q + elems, dtype=np.int64)
    # y codes grouped by trace value, ascending within each group
    by_trace = {int(t): np.flatnonzero(traces == t) for t in np.unique(traces)}
    solutions = [by_trace.get(int(norm), np.empty(0, dtype=np.int64)) for norm in norms]
    xs = np.repeat(np.arange(field.order), [len(ys) for ys in solutions])
    ys = np.concatenate(solutions)
    if len(xs) != q**3:
        raise ValueError(f"found {len(xs)} affine points, expected {q**3}")

    points = tuple(CurvePoint(int(x), int(y)) for x, y in zip(xs, ys))
    log.info("Hermitian curve q=%d: %d affine points over %s", q, len(points), field)
    return HermitianCurve(
        q=q,
        field=field,
        genus=q * (q - 1) // 2,
        points=points,
        xs=xs.astype(np.int64),
        ys=ys.astype(np.int64),
    )


def on_curve(curve, point):
    gf = curve.field.gf
    x, y = gf(int(point.x)), gf(int(point.y))
    return bool(y**curve.q + y == x ** (curve.q + 1))


def _check_degree(curve, r):
    if not 0 <= r < curve.q**3:
        raise ValueError(f"r={r} outside [0, {curve.q**3})")


def monomial_basis(curve, r):
    """Monomials x^i y^j with iq + j(q+1) <= r and j <= q-1, by pole order."""
    _check_degree(curve, r)
    q = curve.q
    basis = [Monomial(i, j, q) for j in range(q) for i in range(r // q + 1) if i * q + j * (q + 1) <= r]
    return sorted(basis, key=lambda mono: (mono.pole_order, mono.j))


def riemann_roch_dim(curve, r):
    """l(rP_inf); equals r - g + 1 once r >= 2g - 1."""
    return len(monomial_basis(curve, r))


def weierstrass_gaps(q):
    """Nonnegative integers that are not pole orders at P_inf (exactly g of them)."""
    genus = q * (q - 1) // 2
    nongaps = {i * q + j * (q + 1) for j in range(q) for i in range(2 * genus // q + 1)}
    return [v for v in range(2 * genus) if v not in nongaps]


def evaluate_monomials(curve, monomials, point_indices):
    """Matrix of monomial values, one row per monomial, one column per listed point."""
    gf = curve.field.gf
    idx = np.asarray(point_indices, dtype=np.int64)
    x = gf(curve.xs[idx])
    y = gf(curve.ys[idx])

    max_i = max((mono.i for mono in monomials), default=0)
    x_powers = [gf.Ones(len(idx))]
    for _ in range(max_i):
        x_powers.append(x_powers[-1] * x)
    y_powers = [gf.Ones(len(idx))]
    for _ in range(curve.q - 1):
        y_powers.append(y_powers[-1] * y)

    matrix = gf.Zeros((len(monomials), len(idx)))
    for row, mono in enumerate(monomials):
        matrix[row] = x_powers[mono.i] * y_powers[mono.j]
    return matrix


def points_report(curve):
    """Field header followed by one `x_code y_code` line per point."""
    lines = [curve.field.header()]
    lines.extend(f"{p.x} {p.y}" for p in curve.points)
    return "\n".join(lines)
