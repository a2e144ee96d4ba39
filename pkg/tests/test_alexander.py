from __future__ import annotations

import math

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import STEVEDORE_BRAID, T, figure_eight, left_trefoil, to_sympy, trefoil
from knotslopes.alexander import (
    CanonicalAlexander,
    Obstruction,
    alexander_from_braid,
    alexander_from_diagram,
    canonicalize,
    coefficient_of_t,
    genus_lower_bound,
    is_monic,
    lspace_coefficient_obstruction,
    multiply,
    torus_alexander,
    torus_braid,
    twist_alexander,
)
from knotslopes.diagram import BraidWord, braid_closure, connected_sum, mirror
from knotslopes.errors import DomainError
from knotslopes.laurent import LaurentPolynomial


def sympy_burau_alexander(b: BraidWord):
    """Independent oracle: first minor of I - (unreduced Burau matrix)."""
    n = b.strand_count
    m = sympy.eye(n)
    for w in b.letters:
        i = abs(w) - 1
        g = sympy.eye(n)
        g[i, i], g[i, i + 1], g[i + 1, i], g[i + 1, i + 1] = 1 - T, T, 1, 0
        m = m * (g if w > 0 else g.inv())
    d = sympy.cancel((sympy.eye(n) - m)[1:, 1:].det())
    num, den = sympy.fraction(sympy.together(d))
    # den is a unit +-t^k
    assert sympy.Poly(den, T).is_monomial
    poly = sympy.Poly(sympy.expand(num), T)
    coeffs = {m[0]: int(c) for m, c in zip(poly.monoms(), poly.coeffs())}
    return canonicalize(LaurentPolynomial(coeffs))


def P(*coeffs):
    return LaurentPolynomial.from_coefficients(list(coeffs))


@pytest.mark.parametrize(
    "braid,expected",
    [
        (BraidWord(2, (1, 1, 1)), P(1, -1, 1)),
        (BraidWord(3, (1, -2, 1, -2)), P(1, -3, 1)),
        (BraidWord(2, (1, 1, 1, 1, 1)), P(1, -1, 1, -1, 1)),
        (STEVEDORE_BRAID, P(2, -5, 2)),
        (BraidWord(3, (1, 1, 1, 2, -1, 2)), P(2, -3, 2)),
        (BraidWord(1, ()), P(1)),
    ],
)
def test_table_values_by_fox_and_burau(braid, expected):
    assert alexander_from_diagram(braid_closure(braid)) == expected
    assert alexander_from_braid(braid) == expected


letters = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=1, max_size=9)


@given(letters)
def test_fox_matches_sympy_burau_on_random_knot_closures(word):
    b = BraidWord(4, tuple(word))
    if b.cycle_count() != 1:
        return
    oracle = sympy_burau_alexander(b)
    assert alexander_from_diagram(braid_closure(b)) == oracle
    assert alexander_from_braid(b) == oracle


@given(letters)
def test_alexander_is_palindromic_and_mirror_invariant(word):
    b = BraidWord(4, tuple(word))
    if b.cycle_count() != 1:
        return
    d = braid_closure(b)
    a = alexander_from_diagram(d)
    assert a.is_palindromic()
    assert abs(a.value_at_one()) == 1
    assert alexander_from_diagram(mirror(d)) == a


@pytest.mark.parametrize("p,q", [(3, 2), (5, 2), (4, 3), (5, 3), (7, 4), (-3, 2), (-5, 3)])
def test_torus_formula_matches_sympy(p, q):
    a, b = abs(p), q
    expr = sympy.cancel((T ** (a * b) - 1) * (T - 1) / ((T**a - 1) * (T**b - 1)))
    assert sympy.expand(to_sympy(torus_alexander(p, q).poly) - expr) == 0
    assert alexander_from_braid(torus_braid(p, q)) == torus_alexander(p, q)


@pytest.mark.parametrize("p,q", [(2, 4), (1, 3), (0, 2), (6, 3)])
def test_torus_rejects_degenerate(p, q):
    with pytest.raises(DomainError):
        torus_alexander(p, q)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_twist_formula(n):
    a = twist_alexander(n)
    assert a == P(n, -(2 * n + 1), n)
    assert is_monic(a) == (n == 1)


def test_figure_eight_is_first_twist_polynomial():
    assert alexander_from_diagram(figure_eight()) == twist_alexander(1)


def test_connected_sum_multiplies():
    d = connected_sum(trefoil(), left_trefoil())
    expected = multiply(torus_alexander(3, 2), torus_alexander(3, 2))
    assert alexander_from_diagram(d) == expected
    # hand multiplication: (1 - t + t^2)^2 = 1 - 2t + 3t^2 - 2t^3 + t^4
    assert expected == P(1, -2, 3, -2, 1)


def test_links_are_rejected():
    with pytest.raises(DomainError):
        alexander_from_diagram(braid_closure(BraidWord(2, (1, 1))))
    with pytest.raises(DomainError):
        alexander_from_braid(BraidWord(2, (1, 1)))


@pytest.mark.parametrize(
    "poly,coef",
    [(P(1, -1, 1), -1), (P(1, -2, 3, -2, 1), -2), (P(1, -3, 1), -3), (P(1), 0)],
)
def test_coefficient_of_t(poly, coef):
    assert coefficient_of_t(canonicalize(poly)) == coef


def test_coefficient_of_t_needs_unit_constant():
    with pytest.raises(DomainError):
        coefficient_of_t(canonicalize(P(2, -5, 2)))


@pytest.mark.parametrize(
    "poly,loose,strict",
    [
        (P(1, -1, 1), Obstruction.NOT_OBSTRUCTED, Obstruction.NOT_OBSTRUCTED),
        (P(1, -3, 1), Obstruction.OBSTRUCTED, Obstruction.OBSTRUCTED),
        (P(1, -1, 0, 1, -1, 1), Obstruction.NOT_OBSTRUCTED, Obstruction.NOT_OBSTRUCTED),
        (P(1, -1, -1, 0, -1, -1, 1), Obstruction.NOT_OBSTRUCTED, Obstruction.OBSTRUCTED),
    ],
)
def test_lspace_obstruction(poly, loose, strict):
    a = canonicalize(poly)
    assert lspace_coefficient_obstruction(a) is loose
    assert lspace_coefficient_obstruction(a, strict=True) is strict


def test_genus_bound_and_symmetric_render():
    a = torus_alexander(5, 3)
    assert genus_lower_bound(a) == (5 - 1) * (3 - 1) // 2
    assert CanonicalAlexander.parse("t^-1 - 1 + t") == P(1, -1, 1)
    assert torus_alexander(3, 2).render_symmetric() == "t^-1 - 1 + t"


def test_canonical_rejects_noncanonical_and_zero():
    with pytest.raises(DomainError):
        CanonicalAlexander(P(-1, 1))
    with pytest.raises(DomainError):
        canonicalize(LaurentPolynomial())


@pytest.mark.parametrize("p,q", [(p, q) for p in range(3, 8) for q in range(2, p) if math.gcd(p, q) == 1])
def test_torus_genus_from_span(p, q):
    assert genus_lower_bound(torus_alexander(p, q)) == (p - 1) * (q - 1) // 2
