"""Periodic construction from an annular tangle, with certificates.

Given a tangle ``t`` whose closure is a knot ``F`` (the factor) and whose
cut meridian is an unknotted axis, stacking ``p`` copies and closing gives
the preimage of ``F`` in the p-fold cyclic cover branched over the axis.
The helpers here derive slope and genus facts about that knot and wrap
each one in a :class:`Certificate` naming the rule and its hypotheses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .alexander import (
    CanonicalAlexander,
    alexander_from_diagram,
    is_monic,
    torus_alexander,
)
from .diagram import (
    AnnularTangle,
    PlanarDiagram,
    annular_closure,
    diagram_predicates,
    sublink,
    tangle_power,
)
from .errors import DomainError
from .laurent import LaurentPolynomial
from .slopes import SlopeSet, rec_families

__all__ = [
    "Certificate",
    "Hypothesis",
    "PeriodicResult",
    "alternating_periodic_facts",
    "alternating_slopes",
    "construct",
    "genus_bound",
    "hyperbolicity_certificate",
    "inferred_slo",
    "murasugi_check",
    "sl_empty_by_fiber_assertion",
    "sl_empty_certificate",
]


@dataclass(frozen=True)
class Hypothesis:
    text: str
    verified: bool

    def to_json(self) -> dict:
        return {"text": self.text, "verified": self.verified}


@dataclass(frozen=True)
class Certificate:
    rule_id: str
    statement: str
    citation: str
    hypotheses: tuple[Hypothesis, ...] = ()

    def __post_init__(self):
        if not self.citation:
            raise DomainError("every certificate needs a citation")
        object.__setattr__(self, "hypotheses", tuple(self.hypotheses))

    @property
    def verified(self) -> bool:
        """True when no hypothesis rests on a user assertion."""
        return all(h.verified for h in self.hypotheses)

    def to_json(self) -> dict:
        return {
            "rule_id": self.rule_id,
            "statement": self.statement,
            "citation": self.citation,
            "hypotheses": [h.to_json() for h in self.hypotheses],
        }

    @classmethod
    def from_json(cls, obj: dict) -> Certificate:
        return cls(
            obj["rule_id"],
            obj["statement"],
            obj["citation"],
            tuple(Hypothesis(h["text"], bool(h["verified"])) for h in obj["hypotheses"]),
        )

    def render(self) -> str:
        lines = [f"[{self.rule_id}] {self.statement}", f"    cites: {self.citation}"]
        for h in self.hypotheses:
            mark = "computed" if h.verified else "UNVERIFIED (user-asserted)"
            lines.append(f"    - {h.text} [{mark}]")
        return "\n".join(lines)


def computed(text: str) -> Hypothesis:
    return Hypothesis(text, True)


def asserted(text: str) -> Hypothesis:
    return Hypothesis(text, False)


CITE_COVER = "slopes lift through cyclic branched covers: K(m/n) covers F(m/(pn))"
CITE_FIBERED = "Ozsvath-Szabo / Ni: a knot with an L-space surgery is fibered"
CITE_MONIC = "Burde-Zieschang: a fibered knot has monic Alexander polynomial"


@dataclass(frozen=True)
class PeriodicResult:
    diagram: PlanarDiagram
    p: int
    factor_diagram: PlanarDiagram
    axis_linking: int
    tangle_crossings: int
    certificates: tuple[Certificate, ...] = field(default=(), compare=False)


def construct(t: AnnularTangle, p: int) -> PeriodicResult:
    """Diagram of the p-periodic knot with factor ``closure(t)`` and axis the cut meridian."""
    if p < 1:
        raise DomainError(f"period must be >= 1, got {p}")
    factor, lk = annular_closure(t)
    if not factor.is_knot():
        raise DomainError(f"tangle closure has {factor.component_count} components, not a knot")
    if math.gcd(p, lk) != 1:
        raise DomainError(f"gcd(p, lk) = gcd({p}, {lk}) != 1: the preimage is not a knot")
    diagram, _ = annular_closure(tangle_power(t, p))
    if not diagram.is_knot():
        raise DomainError(
            f"constructed diagram has {diagram.component_count} components; expected a knot"
        )
    cert = Certificate(
        "periodic-construction",
        f"K is the {p}-periodic knot over the factor F with axis linking number {lk}",
        "cyclic branched cover of S^3 over an unknotted axis is S^3",
        (
            computed(f"gcd({p}, {lk}) = 1"),
            computed("closure of the stacked tangle has one component"),
            computed("axis is the cut meridian of the annulus (unknotted by construction)"),
        ),
    )
    return PeriodicResult(diagram, p, factor, lk, t.crossing_count, (cert,))


def murasugi_check(
    knot: CanonicalAlexander, factor: CanonicalAlexander, p: int, linking: int
) -> bool | None:
    """Classical periodicity congruence modulo a prime ``p``.

    Checks Delta(K) == ±t^a Delta(F)^p (1 + t + ... + t^(lambda-1))^(p-1) mod p
    with lambda = |linking|.  Returns None when ``p`` is not prime.
    """
    if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
        return None
    lam = abs(linking)
    if lam == 0:
        raise DomainError("linking number 0 gives no periodic knot")
    rhs = factor.poly**p * LaurentPolynomial.from_coefficients([1] * lam) ** (p - 1)

    def norm(x: LaurentPolynomial) -> LaurentPolynomial:
        x = x.reduce_mod(p)
        return x if x.is_zero() else x.shift(-x.min_degree)

    lhs = norm(knot.poly)
    return lhs == norm(rhs) or lhs == norm(-rhs)


def inferred_slo(factor_slo: SlopeSet, p: int) -> tuple[SlopeSet, Certificate]:
    if p < 1:
        raise DomainError("period must be >= 1")
    out = factor_slo.scale(p)
    cert = Certificate(
        "periodic-slope-scaling",
        f"S_LO(K) contains {p} * S_LO(F) = {out}",
        CITE_COVER + "; left-orderability of the quotient orbifold group lifts to the cover",
        (computed(f"S_LO(F) contains {factor_slo}"),),
    )
    return out, cert


def sl_empty_certificate(factor_alexander: CanonicalAlexander) -> Certificate | None:
    """Non-monic factor polynomial => factor not fibered => S_L(K) empty."""
    if is_monic(factor_alexander):
        return None
    return Certificate(
        "sl-empty-nonfibered-factor",
        "S_L(K) is empty: the factor knot is not fibered",
        CITE_MONIC + "; " + CITE_FIBERED + "; an L-space surgery on K forces the factor to be fibered",
        (computed(f"Delta(F) = {factor_alexander} is not monic"),),
    )


def sl_empty_by_fiber_assertion(asserted_flag: bool, monic: bool | None = None) -> Certificate | None:
    """Certificate from the user-asserted fiber/axis intersection hypothesis."""
    if not asserted_flag:
        return None
    hyps = [
        asserted(
            "every fiber surface of F meets the axis in more points than lk(F, axis)"
        )
    ]
    if monic is not None:
        hyps.append(computed(f"factor polynomial is {'monic' if monic else 'not monic'}"))
    return Certificate(
        "sl-empty-fiber-axis",
        "S_L(K) is empty (geometric route)",
        "an L-space surgery on K would make the axis meet some fiber of F minimally",
        tuple(hyps),
    )


def genus_bound(factor_bound: int, p: int) -> int:
    if factor_bound < 0 or p < 1:
        raise DomainError("genus bound needs factor_bound >= 0 and p >= 1")
    return p * factor_bound


def _axis_self_crossings(d: PlanarDiagram, idx: int) -> int:
    comp = d.component_of()
    return sum(1 for c in d.crossings if comp[c.under_in] == idx and comp[c.over_in] == idx)


def hyperbolicity_certificate(
    link: PlanarDiagram, p: int, axis_label: str = "C"
) -> Certificate | None:
    """Diagrammatic hyperbolicity certificate for the periodic knot and its surgeries.

    Needs a 2-component diagram of factor and axis that is nonsplit, prime,
    reduced and alternating (so the link is hyperbolic or a torus link), an
    axis without self-crossings and a knotted factor (excluding torus links).
    """
    if link.component_count != 2:
        raise DomainError(f"expected factor + axis (2 components), got {link.component_count}")
    ai = link.component_index(axis_label)
    factor_label = link.labels[1 - ai]
    if p <= 2:
        return None
    pred = diagram_predicates(link)
    if not (pred.nonsplit and pred.prime_diagram and pred.reduced and pred.alternating):
        return None
    if _axis_self_crossings(link, ai):
        return None
    delta = alexander_from_diagram(sublink(link, [factor_label]))
    if delta == 1:
        return None
    return Certificate(
        "hyperbolic-periodic",
        f"K and every K(r), r in Q, are hyperbolic (period {p} > 2)",
        "Menasco: a nonsplit prime alternating link is a torus link or hyperbolic; "
        "orbifold theorem for hyperbolic periodic knots and their fillings",
        (
            computed("factor+axis diagram is nonsplit, prime, reduced and alternating"),
            computed("axis has no self-crossings (unknotted)"),
            computed(f"factor is knotted: Delta = {delta} != 1 (so not a torus link)"),
            computed(f"p = {p} > 2"),
        ),
    )


def _special_sign(pred) -> int:
    if pred.positive:
        return 1
    if pred.negative:
        return -1
    return 0


def _check_alternating_factor(d: PlanarDiagram):
    if not d.is_knot():
        raise DomainError("factor diagram must be a knot")
    pred = diagram_predicates(d)
    if not (pred.alternating and pred.reduced and pred.prime_diagram and pred.nonsplit):
        raise DomainError("factor diagram is not a reduced prime alternating diagram")
    if d.crossing_count == 0:
        raise DomainError("factor diagram has no crossings")
    return pred


def alternating_slopes(factor: PlanarDiagram, p: int) -> SlopeSet:
    """{p/n} slopes with left-orderable surgery on K, from the factor's 1/n slopes.

    All n != 0 when the factor is not special.  For a special factor with all
    crossings positive (right-handed, e.g. the right-handed trefoil with
    S_LO = (-inf, 1)) the 1/n slopes with n < 0 are used, and n > 0 for the
    all-negative case.
    """
    pred = _check_alternating_factor(factor)
    s = _special_sign(pred)
    lo, hi = {0: (None, None), 1: (None, -1), -1: (1, None)}[s]
    return SlopeSet(families=tuple(rec_families(p, lo, hi)))


def _not_two_strand_torus(factor: PlanarDiagram) -> tuple[bool, CanonicalAlexander]:
    delta = alexander_from_diagram(factor)
    if delta == 1:
        return False, delta
    for q in range(3, factor.crossing_count + 1, 2):
        if delta == torus_alexander(q, 2):
            return False, delta
    return True, delta


def alternating_periodic_facts(
    factor: PlanarDiagram, perpendicular: bool, p: int
) -> list[Certificate]:
    """Facts about the periodic knot over a prime alternating factor."""
    pred = _check_alternating_factor(factor)
    certs = []
    perp = asserted("axis is a perpendicular circle of the alternating factor diagram")
    base = computed("factor diagram is reduced, prime, nonsplit and alternating")
    if perpendicular:
        certs.append(
            Certificate(
                "periodic-alternating",
                "K is an alternating knot",
                "lifting a perpendicular axis preserves an alternating diagram",
                (base, perp),
            )
        )
    s = _special_sign(pred)
    slopes = alternating_slopes(factor, p)
    if s == 0:
        kind = computed(
            "factor is not special: mixed crossing signs in a reduced alternating diagram "
            "(writhe is a diagram invariant, Kauffman-Murasugi-Thistlethwaite)"
        )
        which = "all nonzero n"
    else:
        kind = computed(f"factor is special ({'positive' if s > 0 else 'negative'} crossings)")
        which = "n < 0" if s > 0 else "n > 0"
    certs.append(
        Certificate(
            "periodic-alternating-slopes",
            f"S_LO(K) contains {{{p}/n : {which}}} = {slopes}",
            "Boyer-Gordon-Watson: 1/n slopes on prime alternating knots; " + CITE_COVER,
            (base, kind),
        )
    )
    ok, delta = _not_two_strand_torus(factor)
    if perpendicular and ok:
        certs.append(
            Certificate(
                "periodic-alternating-sl-empty",
                "S_L(K) is empty",
                "Ozsvath-Szabo: alternating knots other than (q,2)-torus knots have no L-space "
                "surgery; Murasugi: alternating torus knots are (q,2)-torus knots",
                (
                    base,
                    perp,
                    computed(
                        f"factor is not a (q,2)-torus knot: Delta = {delta} differs from every "
                        f"T(q,2) with q <= {factor.crossing_count}"
                    ),
                ),
            )
        )
    return certs
