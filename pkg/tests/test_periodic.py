from __future__ import annotations

from dataclasses import replace

import pytest

from conftest import STEVEDORE_BRAID, figure_eight, left_trefoil, trefoil
from knotslopes.alexander import alexander_from_diagram, torus_alexander, twist_alexander
from knotslopes.diagram import AnnularTangle, BraidWord, axis_link, braid_closure
from knotslopes.errors import DomainError
from knotslopes.periodic import (
    Certificate,
    alternating_periodic_facts,
    alternating_slopes,
    construct,
    genus_bound,
    hyperbolicity_certificate,
    inferred_slo,
    murasugi_check,
    sl_empty_by_fiber_assertion,
    sl_empty_certificate,
)
from knotslopes.slopes import SlopeSet

SIGMA_CUBED = AnnularTangle.from_braid(BraidWord(2, (1, 1, 1)))


@pytest.mark.parametrize("p", [1, 3, 5, 7])
def test_construct_sigma_cubed(p):
    res = construct(SIGMA_CUBED, p)
    assert res.axis_linking == 2
    assert res.diagram.is_knot()
    assert res.diagram.crossing_count == 3 * p
    assert alexander_from_diagram(res.diagram) == torus_alexander(3 * p, 2)
    assert res.certificates[0].rule_id == "periodic-construction"


@pytest.mark.parametrize("p", [2, 4])
def test_construct_rejects_non_coprime(p):
    with pytest.raises(DomainError):
        construct(SIGMA_CUBED, p)


def test_construct_rejects_link_factor():
    with pytest.raises(DomainError):
        construct(AnnularTangle.from_braid(BraidWord(2, (1, 1))), 3)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_murasugi_congruence_holds_for_constructions(p):
    res = construct(SIGMA_CUBED, p)
    k = alexander_from_diagram(res.diagram)
    f = alexander_from_diagram(res.factor_diagram)
    assert murasugi_check(k, f, p, res.axis_linking) is True


def test_murasugi_congruence_detects_a_wrong_knot():
    # the figure-eight polynomial is not 3-periodic over the trefoil with lk 2
    assert murasugi_check(twist_alexander(1), torus_alexander(3, 2), 3, 2) is False


def test_murasugi_hand_computation():
    # T(2,9) over T(2,3), p = 3, lk = 2.  Mod 3, 1 - t + t^2 = (1 + t)^2, so the
    # right side is (1 + t)^8 = (1 + t)^9 / (1 + t) = (1 + t^9) / (1 + t),
    # which is 1 - t + t^2 - ... + t^8, the T(2,9) polynomial.
    assert murasugi_check(torus_alexander(9, 2), torus_alexander(3, 2), 3, 2) is True


def test_murasugi_skips_non_prime():
    assert murasugi_check(torus_alexander(9, 2), torus_alexander(3, 2), 9, 2) is None


@pytest.mark.parametrize("p", [3, 5, 7])
def test_inferred_slo_examples(p):
    out, cert = inferred_slo(SlopeSet.parse("(-8,4]"), p)
    assert out == SlopeSet.interval(-8 * p, 4 * p, hi_closed=True)
    out, _ = inferred_slo(SlopeSet.parse("(-1,inf)"), p)
    assert out == SlopeSet.interval(-p, None)
    assert cert.verified


def test_sl_empty_routes():
    assert sl_empty_certificate(torus_alexander(3, 2)) is None
    cert = sl_empty_certificate(twist_alexander(2))
    assert cert.verified and cert.rule_id == "sl-empty-nonfibered-factor"
    assumed = sl_empty_by_fiber_assertion(True, monic=True)
    assert not assumed.verified
    assert "UNVERIFIED" in assumed.render()
    assert sl_empty_by_fiber_assertion(False) is None


def test_certificate_json_round_trip_and_citation_required():
    cert = sl_empty_by_fiber_assertion(True)
    assert Certificate.from_json(cert.to_json()) == cert
    with pytest.raises(DomainError):
        Certificate("x", "statement", "", ())


def test_genus_bound():
    assert genus_bound(1, 5) == 5
    with pytest.raises(DomainError):
        genus_bound(-1, 2)


def _alternating_link():
    d = braid_closure(BraidWord(3, (1, 1, -2, 1, 1, -2, -2)))
    return replace(d, labels=("K", "C"))


def test_hyperbolicity_certificate():
    link = _alternating_link()
    cert = hyperbolicity_certificate(link, 3)
    assert cert is not None and cert.verified
    assert hyperbolicity_certificate(link, 2) is None
    # the belt axis crosses the factor in a non-alternating way
    assert hyperbolicity_certificate(axis_link(SIGMA_CUBED), 3) is None
    with pytest.raises(DomainError):
        hyperbolicity_certificate(link, 3, axis_label="Z")
    with pytest.raises(DomainError):
        hyperbolicity_certificate(trefoil(), 3)


@pytest.mark.parametrize(
    "factor,which",
    [(trefoil, "n < 0"), (left_trefoil, "n > 0"), (figure_eight, "all nonzero n")],
)
def test_alternating_slope_signs(factor, which):
    facts = alternating_periodic_facts(factor(), True, 3)
    ids = [c.rule_id for c in facts]
    assert ids[:2] == ["periodic-alternating", "periodic-alternating-slopes"]
    assert which in facts[1].statement
    s = alternating_slopes(factor(), 3)
    if which == "n < 0":
        assert s.member(-3) and not s.member(3)
    elif which == "n > 0":
        assert s.member(3) and not s.member(-3)
    else:
        assert s.member(3) and s.member(-3)


def test_alternating_facts_sl_empty_only_off_two_strand_torus():
    assert "periodic-alternating-sl-empty" in {c.rule_id for c in alternating_periodic_facts(figure_eight(), True, 3)}
    assert "periodic-alternating-sl-empty" not in {c.rule_id for c in alternating_periodic_facts(trefoil(), True, 3)}
    assert all(c.rule_id != "periodic-alternating" for c in alternating_periodic_facts(trefoil(), False, 3))


def test_alternating_facts_reject_non_alternating():
    with pytest.raises(DomainError):
        alternating_periodic_facts(braid_closure(STEVEDORE_BRAID), True, 3)
