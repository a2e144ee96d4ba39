"""Knot diagrams, Alexander polynomials and surgery slope-set inference."""

from __future__ import annotations

from .alexander import (
    CanonicalAlexander,
    Obstruction,
    alexander_from_braid,
    alexander_from_diagram,
    coefficient_of_t,
    is_monic,
    lspace_coefficient_obstruction,
    torus_alexander,
    twist_alexander,
)
from .diagram import (
    AnnularTangle,
    BraidWord,
    PlanarDiagram,
    annular_closure,
    axis_link,
    braid_closure,
    connected_sum,
    diagram_predicates,
    disjoint_union,
    mirror,
    tangle_power,
)
from .errors import DomainError, KnotSlopesError, ParseError
from .formats import parse_braid, parse_pd, parse_tangle
from .inference import (
    BraidClosure,
    Classification,
    Diagram,
    FigureEight,
    Mirror,
    Periodic,
    RepeatedSum,
    Satellite,
    Sum,
    Torus,
    Trivial,
    Twist,
    classify,
    explain,
    parse_expr,
)
from .laurent import LaurentPolynomial
from .periodic import Certificate, construct, inferred_slo, murasugi_check
from .slopes import SlopeSet, catalog_special, catalog_torus, lspace_structure_check

__version__ = "0.1.0"
