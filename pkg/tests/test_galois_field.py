import itertools

import numpy as np
import pytest

from hermfold.galois_field import (
    arith,
    field_create,
    field_from_header,
    frobenius_q,
    is_irreducible,
    quadratic_extension,
    solve_mu_constraint,
    split_prime_power,
    subfield_elements,
)


def test_prime_field_uses_modulus_t():
    field = field_create(2, 1)
    assert field.order == 2
    assert field.modulus == (0, 1)


def test_gf4_modulus_is_the_only_irreducible_quadratic():
    assert field_create(2, 2).modulus == (1, 1, 1)


def test_gf9_modulus_is_lex_least_irreducible_quadratic():
    def has_root(c0, c1):
        return any((c0 + c1 * t + t * t) % 3 == 0 for t in range(3))

    irreducible = [(c0, c1, 1) for c0, c1 in itertools.product(range(3), repeat=2) if not has_root(c0, c1)]
    assert field_create(3, 2).modulus == min(irreducible)
    assert field_create(3, 2).modulus == (1, 0, 1)


def test_gf16_modulus():
    field = field_create(2, 4)
    assert field.modulus == (1, 0, 0, 1, 1)
    assert is_irreducible(field.modulus, 2)
    assert not is_irreducible((1, 0, 0, 0, 1), 2)


def test_field_create_rejects_bad_arguments():
    with pytest.raises(ValueError):
        field_create(4, 1)
    with pytest.raises(ValueError):
        field_create(2, 0)
    with pytest.raises(ValueError):
        field_create(2, 17)


def test_header_round_trip():
    field = field_create(2, 4)
    assert field.header() == "GF 2 4 1 0 0 1 1"
    assert field_from_header(field.header()) is field
    with pytest.raises(ValueError):
        field_from_header("GF 2 4 1 1 0 0 1")


def test_split_prime_power():
    assert split_prime_power(16) == (2, 4)
    assert split_prime_power(7) == (7, 1)
    with pytest.raises(ValueError):
        split_prime_power(12)
    with pytest.raises(ValueError):
        split_prime_power(1)


def test_gf4_arithmetic():
    field = field_create(2, 2)
    alpha = field.element(2)
    assert int(arith(alpha, alpha, "mul")) == 3
    assert int(arith(alpha, alpha, "add")) == 0
    assert int(arith(arith(alpha, alpha, "mul"), alpha, "div")) == 2


def test_arith_errors():
    gf4, gf9 = field_create(2, 2), field_create(3, 2)
    with pytest.raises(ZeroDivisionError):
        arith(gf4.element(1), gf4.element(0), "div")
    with pytest.raises(ValueError):
        arith(gf4.element(1), gf9.element(1), "add")
    with pytest.raises(ValueError):
        gf4.element(4)


def test_gf9_field_axioms_exhaustively():
    elems = field_create(3, 2).elements
    a = elems[:, np.newaxis, np.newaxis]
    b = elems[np.newaxis, :, np.newaxis]
    c = elems[np.newaxis, np.newaxis, :]
    assert np.all((a * b) * c == a * (b * c))
    assert np.all(a * b == b * a)
    assert np.all(a * (b + c) == a * b + a * c)


def test_frobenius_on_gf4():
    field = quadratic_extension(2)
    assert int(frobenius_q(field.element(2), 2)) == 3
    assert [int(v) for v in subfield_elements(field, 2)] == [0, 1]


def test_frobenius_is_an_involution_on_gf16():
    field = quadratic_extension(4)
    elems = field.elements
    assert np.all(frobenius_q(frobenius_q(elems, 4), 4) == elems)
    for a in subfield_elements(field, 4):
        assert frobenius_q(a, 4) == a


def test_solve_mu_constraint():
    gf4 = quadratic_extension(2)
    assert sorted(int(mu) for mu in solve_mu_constraint(gf4.element(0), 2)) == [0, 1]

    gf16 = quadratic_extension(4)
    for delta in range(16):
        solutions = solve_mu_constraint(gf16.element(delta), 4)
        assert len(solutions) == 4
        if delta == 0:
            assert 0 in [int(mu) for mu in solutions]


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16])
def test_frobenius_is_a_field_homomorphism(q):
    elems = quadratic_extension(q).elements
    a, b = elems[:, np.newaxis], elems[np.newaxis, :]
    assert np.all(frobenius_q(a + b, q) == frobenius_q(a, q) + frobenius_q(b, q))
    assert np.all(frobenius_q(a * b, q) == frobenius_q(a, q) * frobenius_q(b, q))


def test_gf256_field_axioms_on_random_triples():
    gf = field_create(2, 8).gf
    rng = np.random.default_rng(2024)
    a, b, c = gf(rng.integers(0, 256, size=(3, 10_000)))
    assert np.all((a * b) * c == a * (b * c))
    assert np.all((a + b) + c == a + (b + c))
    assert np.all(a * b == b * a)
    assert np.all(a * (b + c) == a * b + a * c)
    assert np.all(a + gf.Zeros(a.shape) == a)
    assert np.all(a - a == 0)
    nonzero = a[a != 0]
    assert np.all(nonzero * nonzero**-1 == gf.Ones(nonzero.shape))


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_mu_solutions_satisfy_the_constraint(q):
    field = quadratic_extension(q)
    for code in range(field.order):
        delta = field.element(code)
        solutions = solve_mu_constraint(delta, q)
        assert len(solutions) == q
        for mu in solutions:
            assert frobenius_q(mu, q) + mu == delta ** (q + 1)
