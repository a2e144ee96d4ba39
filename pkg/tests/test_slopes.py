from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import PROBES, slope_sets
from knotslopes.errors import DomainError, ParseError
from knotslopes.slopes import (
    SlopeSet,
    catalog_special,
    catalog_torus,
    lspace_structure_check,
    parse_slope,
)


def members(s):
    return {x for x in PROBES if s.member(x)}


@given(slope_sets(), slope_sets())
def test_union_and_intersection_pointwise(a, b):
    assert members(a | b) == members(a) | members(b)
    assert members(a & b) == members(a) & members(b)


@given(slope_sets())
def test_complement_pointwise(a):
    c = a.complement_in_Q()
    assert members(c) == set(PROBES) - members(a)
    assert c.complement_in_Q() == a


@given(slope_sets())
def test_canonical_form_is_idempotent_and_parses_back(a):
    assert SlopeSet.parse(a.render()) == a
    assert SlopeSet.from_json(a.to_json()) == a
    assert a.union(a) == a and a.intersect(a) == a


@given(slope_sets(), st.sampled_from([Fraction(1, 3), Fraction(2), Fraction(5), Fraction(7, 2)]))
def test_scale_and_negate_pointwise(a, p):
    scaled = a.scale(p)
    neg = a.negate()
    for x in PROBES:
        assert scaled.member(p * x) == a.member(x)
        assert neg.member(-x) == a.member(x)


@pytest.mark.parametrize(
    "text,canonical",
    [
        ("(-1,0] u (0,1)", "(-1,1)"),
        ("(-4,4) u Z", "[-4,4] u Z[-inf..-5] u Z[5..inf]"),
        ("{0} u 3*Z[1..inf]", "3*Z[0..inf]"),
        ("{3, 1, 2}", "{1, 2, 3}"),
        ("(-inf,1) u (-1,inf)", "Q"),
        ("(1,1)", "empty"),
        ("[2,2]", "{2}"),
        ("{1/2} u [1/2,3)", "[1/2,3)"),
    ],
)
def test_canonical_rendering(text, canonical):
    assert SlopeSet.parse(text).render() == canonical


def test_families_meet_and_membership():
    z = SlopeSet.integers()
    six = SlopeSet.parse("6/Z[1..inf]")
    assert z.intersect(six) == SlopeSet.of(1, 2, 3, 6)
    assert SlopeSet.parse("1/Z[-inf..-1]").member(Fraction(-1, 7))
    assert not SlopeSet.parse("1/Z[-inf..-1]").member(Fraction(1, 7))


def test_complement_with_families_is_refused():
    with pytest.raises(DomainError):
        SlopeSet.integers().complement_in_Q()


@pytest.mark.parametrize("bad", ["(1,", "[-inf,2)", "(3,inf]", "{1,x}", "", "2/0", "3/Z"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        SlopeSet.parse(bad)


def test_parse_slope():
    assert parse_slope("-6/4") == Fraction(-3, 2)
    with pytest.raises(ParseError):
        parse_slope("1/0")


@pytest.mark.parametrize("p", [3, 5, 7])
def test_scaling_examples(p):
    assert SlopeSet.parse("(-8,4]").scale(p) == SlopeSet.interval(-8 * p, 4 * p, hi_closed=True)
    assert SlopeSet.parse("(-1,inf)").scale(p) == SlopeSet.interval(-p, None)


def test_scale_rejects_nonpositive():
    with pytest.raises(DomainError):
        SlopeSet.of(1).scale(0)


@pytest.mark.parametrize("p,q", [(3, 2), (5, 2), (4, 3), (7, 5)])
def test_torus_catalog(p, q):
    cat = catalog_torus(p, q)
    c = p * q - p - q
    assert cat.slo_exact == SlopeSet.interval(None, c)
    assert cat.sl == SlopeSet.interval(c, None, lo_closed=True)
    assert cat.slo_exact.union(cat.sl).is_all_of_Q()
    assert cat.slo_exact.intersect(cat.sl).is_empty()
    mirrored = catalog_torus(-p, q)
    assert mirrored.sl == cat.sl.negate()
    assert lspace_structure_check(cat.sl, (p - 1) * (q - 1) // 2)


def test_special_catalogs():
    assert catalog_special("trivial").slo_exact == SlopeSet.of(0)
    assert catalog_special("twist", 2).slo_lower == SlopeSet.parse("(-8,4]")
    fig8 = catalog_special("figure-eight")
    assert fig8.slo_exact is None and fig8.sl.is_empty()
    with pytest.raises(DomainError):
        catalog_special("twist", 1)


def test_structure_check_rejects_wrong_shapes():
    assert not lspace_structure_check(SlopeSet.parse("[2,inf)"), 1)
    assert lspace_structure_check(SlopeSet.parse("(-inf,-1]"), 1)
    assert lspace_structure_check(SlopeSet.empty(), 3)
