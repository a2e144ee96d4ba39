"""Hypothesis strategies shared by the slope-set tests."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from knotslopes.slopes import Interval, SlopeSet

ends = st.one_of(st.none(), st.integers(-12, 12).map(lambda k: Fraction(k, 2)))


@st.composite
def intervals(draw):
    lo, hi = draw(ends), draw(ends)
    if lo is not None and hi is not None and lo > hi:
        lo, hi = hi, lo
    lc = lo is not None and draw(st.booleans())
    hc = hi is not None and draw(st.booleans())
    return Interval(lo, lc, hi, hc)


@st.composite
def slope_sets(draw):
    """Family-free canonical slope sets with small half-integer endpoints."""
    ivs = draw(st.lists(intervals(), max_size=3))
    pts = draw(st.lists(st.integers(-14, 14).map(lambda k: Fraction(k, 2)), max_size=3))
    return SlopeSet(tuple(ivs), tuple(pts), ())


# probe slopes: quarter integers cover every endpoint, gap and midpoint
PROBES = [Fraction(k, 4) for k in range(-60, 61)] + [Fraction(-10**6), Fraction(10**6)]
