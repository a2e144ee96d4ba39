from __future__ import annotations

import sympy
from hypothesis import settings

from knotslopes import BraidWord, LaurentPolynomial, braid_closure, mirror

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")

T = sympy.Symbol("t")


def to_sympy(p: LaurentPolynomial):
    return sum((c * T**e for e, c in p.terms()), sympy.Integer(0))


def trefoil():
    # positive (right-handed) trefoil
    return braid_closure(BraidWord(2, (1, 1, 1)))


def left_trefoil():
    return mirror(trefoil())


def figure_eight():
    return braid_closure(BraidWord(3, (1, -2, 1, -2)))


# a braid presentation of the twist knot with Alexander polynomial 2 - 5t + 2t^2
STEVEDORE_BRAID = BraidWord(4, (1, 1, 2, -1, -3, 2, -3))
