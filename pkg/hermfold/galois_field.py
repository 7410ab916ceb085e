import functools
import itertools
import logging
from dataclasses import dataclass

import galois
import numpy as np

from hermfold.config import MAX_FIELD_ORDER

log = logging.getLogger(__name__)

# A field element is a 0-d galois array; its integer value is the element code
FieldElement = galois.FieldArray


@dataclass(frozen=True)
class Field:
    """GF(p^s) with a fixed polynomial-basis integer encoding.

    The code of an element is the base-p integer whose digits are the
    coefficients of its residue modulo `modulus`, lowest degree first.
    """

    p: int
    s: int
    modulus: tuple
    gf: type

    @property
    def order(self):
        return self.p**self.s

    @property
    def elements(self):
        return self.gf.elements

    def element(self, code):
        if not 0 <= int(code) < self.order:
            raise ValueError(f"element code {code} outside [0, {self.order})")
        return self.gf(int(code))

    def array(self, codes):
        return self.gf(np.asarray(codes, dtype=np.int64))

    def header(self):
        return "GF " + " ".join(str(v) for v in (self.p, self.s, *self.modulus))

    def __str__(self):
        return f"GF({self.order})"


def _monic(prime_field, lower):
    return galois.Poly(list(lower) + [1], field=prime_field, order="asc")


def is_irreducible(coefficients, p):
    """Trial division of a monic polynomial by every monic polynomial of degree <= s/2.

    Args:
        coefficients: Coefficients over GF(p), lowest degree first, leading 1 included
        p: Characteristic

    Returns:
        True when no divisor of positive degree exists
    """
    prime_field = galois.GF(p)
    modulus = galois.Poly(list(coefficients), field=prime_field, order="asc")
    zero = galois.Poly.Zero(prime_field)
    for degree in range(1, modulus.degree // 2 + 1):
        for lower in itertools.product(range(p), repeat=degree):
            if modulus % _monic(prime_field, lower) == zero:
                return False
    return True


def least_irreducible(p, s):
    """Lexicographically least monic irreducible of degree s over GF(p).

    Candidates are ordered by their lower coefficients (c0, c1, ..., c_{s-1}),
    compared c0 first.
    """
    for lower in itertools.product(range(p), repeat=s):
        if s == 1 or is_irreducible((*lower, 1), p):
            return (*lower, 1)
    raise ValueError(f"no irreducible polynomial of degree {s} over GF({p})")


@functools.lru_cache(maxsize=None)
def field_create(p, s):
    """Build GF(p^s) with the lexicographically least irreducible modulus.

    Args:
        p: Prime characteristic
        s: Extension degree, at least 1

    Returns:
        Field descriptor wrapping a galois field class
    """
    if not galois.is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if s < 1:
        raise ValueError("extension degree must be at least 1")
    if p**s > MAX_FIELD_ORDER:
        raise ValueError(f"field order {p}^{s} exceeds {MAX_FIELD_ORDER}")

    modulus = least_irreducible(p, s)
    if s == 1:
        gf = galois.GF(p)
    else:
        gf = galois.GF(p**s, irreducible_poly=galois.Poly(list(modulus), field=galois.GF(p), order="asc"))
    log.debug("built GF(%d^%d) with modulus %s", p, s, modulus)
    return Field(p=p, s=s, modulus=modulus, gf=gf)


def field_from_header(line):
    """Rebuild a field from its `GF p s c0 ... cs` descriptor line."""
    tokens = line.split()
    if len(tokens) < 4 or tokens[0] != "GF":
        raise ValueError(f"not a field descriptor: {line!r}")
    p, s = int(tokens[1]), int(tokens[2])
    field = field_create(p, s)
    if tuple(int(t) for t in tokens[3:]) != field.modulus:
        raise ValueError(f"descriptor modulus {tokens[3:]} differs from {field.modulus}")
    return field


def split_prime_power(q):
    """Return (p, e) with q = p^e, or raise for anything else."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    primes, exponents = galois.factors(q)
    if len(primes) != 1:
        raise ValueError(f"{q} is not a prime power")
    return int(primes[0]), int(exponents[0])


def quadratic_extension(q):
    """GF(q^2) for a prime power q."""
    p, e = split_prime_power(q)
    return field_create(p, 2 * e)


def arith(a, b, op):
    """Add, subtract, multiply or divide two elements of the same field."""
    if type(a) is not type(b):
        raise ValueError(f"field mismatch: {type(a).name} and {type(b).name}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if int(b) == 0:
            raise ZeroDivisionError("division by zero in " + type(a).name)
        return a / b
    raise ValueError(f"unknown operation '{op}'")


def _check_quadratic(gf, q):
    if q * q != gf.order:
        raise ValueError(f"q={q} is not the square root of the field order {gf.order}")


def frobenius_q(a, q):
    """a^q for a in GF(q^2); an involution fixing exactly GF(q)."""
    _check_quadratic(type(a), q)
    return a**q


def subfield_elements(field, q):
    """Elements of GF(q) inside GF(q^2), taken as the fixed points of frobenius_q."""
    _check_quadratic(field.gf, q)
    elems = field.elements
    return elems[elems**q == elems]


def trace_q(a, q):
    return a**q + a


def norm_q(a, q):
    return a ** (q + 1)


def solve_mu_constraint(delta, q):
    """All mu in GF(q^2) with mu^q + mu = delta^(q+1), by exhaustive scan."""
    gf = type(delta)
    _check_quadratic(gf, q)
    elems = gf.elements
    solutions = elems[trace_q(elems, q) == norm_q(delta, q)]
    log.debug("delta=%d has %d mu solutions", int(delta), len(solutions))
    return [gf(int(mu)) for mu in solutions]
