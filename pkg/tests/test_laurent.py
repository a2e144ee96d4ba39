from __future__ import annotations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import T, to_sympy
from knotslopes.errors import DomainError, ParseError
from knotslopes.laurent import LaurentPolynomial, determinant

coeffs = st.lists(st.integers(-20, 20), min_size=0, max_size=6)
polys = st.builds(LaurentPolynomial.from_coefficients, coeffs, st.integers(-4, 4))


@given(polys, polys)
def test_addition_and_multiplication_match_sympy(a, b):
    assert sympy.expand(to_sympy(a + b) - (to_sympy(a) + to_sympy(b))) == 0
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == 0


@given(polys, polys)
def test_exact_division_inverts_multiplication(a, b):
    if b.is_zero():
        return
    assert (a * b).divmod_exact(b) == a


def test_inexact_division_raises():
    a = LaurentPolynomial.from_coefficients([1, 0, 1])
    with pytest.raises(DomainError):
        a.divmod_exact(LaurentPolynomial.from_coefficients([1, 1]))


@given(polys)
def test_render_parse_round_trip(a):
    assert LaurentPolynomial.parse(a.render()) == a


@given(polys)
def test_json_round_trip(a):
    assert LaurentPolynomial.from_json(a.to_json()) == a


@pytest.mark.parametrize(
    "text,expected",
    [
        ("1 - t + t^2", {0: 1, 1: -1, 2: 1}),
        ("2t^-1 - 5 + 2t", {-1: 2, 0: -5, 1: 2}),
        ("-t^3", {3: -1}),
        ("0", {}),
    ],
)
def test_parse_examples(text, expected):
    assert LaurentPolynomial.parse(text).coefficients == expected


@pytest.mark.parametrize("bad", ["t^", "1 + + t", "x^2", ""])
def test_parse_rejects_garbage(bad):
    with pytest.raises(ParseError):
        LaurentPolynomial.parse(bad)


def test_substitute_inverse_and_shift():
    a = LaurentPolynomial.from_coefficients([1, 2, 3])
    assert a.substitute_inverse().coefficients == {0: 1, -1: 2, -2: 3}
    assert a.shift(2).min_degree == 2


def test_reduce_mod():
    a = LaurentPolynomial.from_coefficients([7, -5, 3])
    assert a.reduce_mod(3).coefficients == {0: 1, 1: 1}


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=3, max_size=3), st.integers(1, 3))
def test_determinant_matches_sympy(rows, n):
    # build an n x n matrix of Laurent polynomials from small integer data
    n = min(n, 3)
    m = [
        [LaurentPolynomial.from_coefficients(rows[(i + j) % 3][: 2 + (i * j) % 3], low=(i - j) % 2 - 1) for j in range(n)]
        for i in range(n)
    ]
    expected = sympy.Matrix([[to_sympy(x) for x in row] for row in m]).det()
    assert sympy.simplify(to_sympy(determinant(m)) - expected) == 0


def test_determinant_of_empty_matrix_is_one():
    assert determinant([]) == 1
