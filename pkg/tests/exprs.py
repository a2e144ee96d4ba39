"""Expression corpus and strategies for the inference tests."""

from __future__ import annotations

import math

from hypothesis import strategies as st

from knotslopes.diagram import BraidWord
from knotslopes.inference import (
    BraidClosure,
    FigureEight,
    Mirror,
    RepeatedSum,
    Sum,
    Torus,
    Trivial,
    Twist,
)

TORI = [(p, q) for p in range(3, 6) for q in range(2, p) if math.gcd(p, q) == 1]

leaves = st.one_of(
    st.just(Trivial()),
    st.just(FigureEight()),
    st.sampled_from(TORI).map(lambda pq: Torus(*pq)),
    st.integers(2, 4).map(Twist),
    st.sampled_from(
        [(2, (1, 1, 1)), (3, (1, -2, 1, -2)), (4, (1, 1, 2, -1, -3, 2, -3)), (3, (1, 1, 1, 2, -1, 2))]
    ).map(lambda nw: BraidClosure(BraidWord(*nw))),
)

exprs = st.recursive(
    leaves,
    lambda kids: st.one_of(
        kids.map(Mirror),
        st.tuples(kids, kids).map(lambda ab: Sum(*ab)),
        st.tuples(kids, st.integers(1, 3)).map(lambda ep: RepeatedSum(*ep)),
    ),
    max_leaves=4,
)

CORPUS = [
    Trivial(),
    FigureEight(),
    Torus(3, 2),
    Torus(-5, 2),
    Torus(5, 3),
    Twist(2),
    Twist(5),
    Sum(Mirror(Torus(3, 2)), Torus(3, 2)),
    Sum(Sum(Mirror(Torus(3, 2)), Torus(3, 2)), Twist(2)),
    Sum(Torus(3, 2), Torus(5, 2)),
    RepeatedSum(Torus(3, 2), 3),
    RepeatedSum(Twist(2), 2),
    Sum(FigureEight(), Trivial()),
    BraidClosure(BraidWord(3, (1, -2, 1, -2))),
    BraidClosure(BraidWord(4, (1, 1, 2, -1, -3, 2, -3))),
    BraidClosure(BraidWord(2, (1, 1, 1, 1, 1))),
    Mirror(Sum(Torus(4, 3), Twist(3))),
]
