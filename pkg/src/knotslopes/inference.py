"""Knot expressions and the rule engine that classifies them.

``classify(expr)`` walks an expression bottom-up and returns a
:class:`Classification`: a lower bound for the left-orderable slope set,
the L-space slope status, fiberedness, genus bounds and the Alexander
polynomial, together with the certificate chain that justifies them.

Optional rules can be switched off through the ``rules`` argument; the
result with fewer rules is always a subset (slope-wise) of the full one.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Union

from .alexander import (
    CanonicalAlexander,
    Obstruction,
    alexander_from_braid,
    alexander_from_diagram,
    coefficient_of_t,
    genus_lower_bound,
    is_monic,
    lspace_coefficient_obstruction,
    multiply,
    torus_alexander,
    twist_alexander,
)
from .diagram import (
    AnnularTangle,
    BraidWord,
    PlanarDiagram,
    axis_link,
    braid_closure,
    diagram_predicates,
    linking_number,
    sublink,
)
from .errors import DomainError, ParseError
from .laurent import LaurentPolynomial
from .periodic import (
    Certificate,
    alternating_periodic_facts,
    alternating_slopes,
    asserted,
    computed,
    construct,
    hyperbolicity_certificate,
    inferred_slo,
    murasugi_check,
    sl_empty_by_fiber_assertion,
    sl_empty_certificate,
)
from .slopes import SlopeSet, catalog_special, catalog_torus, lspace_structure_check, rec_families

__all__ = [
    "OPTIONAL_RULES",
    "BraidClosure",
    "Classification",
    "Diagram",
    "FigureEight",
    "Mirror",
    "Periodic",
    "RepeatedSum",
    "Satellite",
    "Sum",
    "Torus",
    "Trivial",
    "Twist",
    "classify",
    "explain",
    "parse_expr",
]

OPTIONAL_RULES = frozenset(
    {"repeated-sum-scale", "torus-sum-coefficient", "alternating-slopes", "satellite"}
)

ZERO_SET = SlopeSet.of(0)


# ---------------------------------------------------------------------------
# expressions


@dataclass(frozen=True)
class Trivial:
    def render(self) -> str:
        return "trivial"


@dataclass(frozen=True)
class Torus:
    p: int
    q: int

    def __post_init__(self):
        if self.q < 2 or abs(self.p) < 2:
            raise DomainError(f"torus({self.p},{self.q}) needs |p| >= 2 and q >= 2")
        if math.gcd(self.p, self.q) != 1:
            raise DomainError(f"torus({self.p},{self.q}) is a link: gcd != 1")

    def render(self) -> str:
        return f"torus({self.p},{self.q})"


@dataclass(frozen=True)
class Twist:
    n: int

    def __post_init__(self):
        if self.n <= 1:
            raise DomainError(f"twist({self.n}) needs n > 1 (use fig8 for n = 1)")

    def render(self) -> str:
        return f"twist({self.n})"


@dataclass(frozen=True)
class FigureEight:
    def render(self) -> str:
        return "fig8"


@dataclass(frozen=True)
class Mirror:
    e: KnotExpr

    def render(self) -> str:
        return f"mirror({self.e.render()})"


@dataclass(frozen=True)
class Sum:
    a: KnotExpr
    b: KnotExpr

    def render(self) -> str:
        return f"sum({self.a.render()},{self.b.render()})"


@dataclass(frozen=True)
class RepeatedSum:
    e: KnotExpr
    p: int

    def __post_init__(self):
        if self.p < 1:
            raise DomainError("nsum needs p >= 1")

    def render(self) -> str:
        return f"nsum({self.e.render()},{self.p})"


@dataclass(frozen=True)
class BraidClosure:
    braid: BraidWord

    def render(self) -> str:
        from .formats import render_braid

        return f'braid("{render_braid(self.braid)}")'


@dataclass(frozen=True)
class Diagram:
    diagram: PlanarDiagram
    source: str = field(default="", compare=False)

    def render(self) -> str:
        return f"pd({self.source or '<diagram>'})"


@dataclass(frozen=True)
class Periodic:
    tangle: AnnularTangle
    p: int
    assertions: frozenset[str] = frozenset()
    factor: KnotExpr | None = None
    link: PlanarDiagram | None = None
    source: str = field(default="", compare=False)
    link_source: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "assertions", frozenset(self.assertions))
        bad = self.assertions - {"fiber", "perp", "irreducible"}
        if bad:
            raise DomainError(f"unknown assertion(s): {sorted(bad)}")
        if math.gcd(self.p, self.tangle.axis_linking) != 1:
            raise DomainError(
                f"gcd(p, lk) = gcd({self.p}, {self.tangle.axis_linking}) != 1"
            )

    def render(self) -> str:
        parts = [self.source or "<tangle>", str(self.p)]
        if self.assertions:
            parts.append("assert=" + "+".join(sorted(self.assertions)))
        if self.factor is not None:
            parts.append(f"factor={self.factor.render()}")
        if self.link is not None:
            parts.append(f"link={self.link_source or '<diagram>'}")
        return f"periodic({','.join(parts)})"


@dataclass(frozen=True)
class Satellite:
    pattern: KnotExpr
    companion: KnotExpr
    irreducible: bool = False

    def render(self) -> str:
        tail = ",assert=irreducible" if self.irreducible else ""
        return f"satellite({self.pattern.render()},{self.companion.render()}{tail})"


KnotExpr = Union[
    Trivial, Torus, Twist, FigureEight, Mirror, Sum, RepeatedSum, BraidClosure, Diagram,
    Periodic, Satellite,
]


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class Classification:
    slo_lower: SlopeSet
    slo_exact: SlopeSet | None
    sl_status: str  # "empty" | "exact" | "unknown"
    sl: SlopeSet | None
    fibered: str  # "yes" | "no" | "unknown"
    genus_lower: int
    genus_exact: int | None
    alexander: CanonicalAlexander | None
    certificates: tuple[Certificate, ...] = field(default=(), compare=False)
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.sl_status not in ("empty", "exact", "unknown"):
            raise DomainError(f"bad sl_status {self.sl_status!r}")
        if self.fibered not in ("yes", "no", "unknown"):
            raise DomainError(f"bad fibered value {self.fibered!r}")

    @property
    def has_unverified(self) -> bool:
        return any(not c.verified for c in self.certificates)

    def slope_data(self) -> tuple:
        return (self.slo_lower, self.slo_exact, self.sl_status, self.sl)

    def to_json(self) -> dict:
        def s(x):
            return None if x is None else x.render()

        return {
            "slo_lower": s(self.slo_lower),
            "slo_lower_json": self.slo_lower.to_json(),
            "slo_exact": s(self.slo_exact),
            "sl_status": self.sl_status,
            "sl": "empty" if self.sl_status == "empty" else s(self.sl),
            "fibered": self.fibered,
            "genus_lower": str(self.genus_lower),
            "genus_exact": None if self.genus_exact is None else str(self.genus_exact),
            "alexander": None if self.alexander is None else self.alexander.render(),
            "alexander_json": None if self.alexander is None else self.alexander.to_json(),
            "certificates": [c.to_json() for c in self.certificates],
            "warnings": list(self.warnings),
        }


def _obstruction_cert(alex: CanonicalAlexander, strict: bool) -> Certificate | None:
    if lspace_coefficient_obstruction(alex, strict=strict) is not Obstruction.OBSTRUCTED:
        return None
    how = "a coefficient of absolute value >= 2"
    if strict and all(abs(c) <= 1 for c in alex.coefficients):
        how = "nonzero coefficients that are not alternating +-1"
    return Certificate(
        "lspace-coefficient-obstruction",
        "S_L(K) is empty: the Alexander polynomial cannot be that of an L-space knot",
        "Ozsvath-Szabo: the Alexander polynomial of an L-space knot has coefficients +-1 "
        "alternating in sign",
        (computed(f"Delta = {alex} has {how}"),),
    )


def _nonfibered_cert(reason: str) -> Certificate:
    return Certificate(
        "sl-empty-nonfibered",
        "S_L(K) is empty: K is not fibered",
        "Ozsvath-Szabo / Ni: a knot with an L-space surgery is fibered",
        (computed(reason),),
    )


def _with_zero(s: SlopeSet) -> SlopeSet:
    return s.union(ZERO_SET)


def _promote(slo: SlopeSet, exact: SlopeSet | None, certs: list) -> SlopeSet | None:
    if exact is None and slo.is_all_of_Q():
        certs.append(
            Certificate(
                "slo-all-of-Q",
                "S_LO(K) = Q exactly (the lower bound is already all of Q)",
                "Q has no proper superset among slope sets",
                (computed("S_LO lower bound equals Q"),),
            )
        )
        return slo
    return exact


class _Engine:
    def __init__(self, rules: frozenset[str], strict: bool):
        self.rules = rules
        self.strict = strict

    def on(self, rule: str) -> bool:
        return rule in self.rules

    # dispatch -------------------------------------------------------------

    def classify(self, e) -> Classification:
        method = getattr(self, "_" + type(e).__name__.lower(), None)
        if method is None:
            raise DomainError(f"cannot classify {type(e).__name__}")
        c = method(e)
        return self._finish(c)

    def _finish(self, c: Classification) -> Classification:
        warnings = list(c.warnings)
        if not c.slo_lower.member(0):
            c = replace(c, slo_lower=_with_zero(c.slo_lower))
        if c.sl is not None and c.sl.member(0):
            warnings.append("internal: 0 found in an L-space slope set")
        if c.sl_status == "exact" and c.sl is not None and not c.sl.is_empty() and c.genus_exact != 0:
            if c.genus_exact is not None and not lspace_structure_check(c.sl, c.genus_exact):
                warnings.append(
                    f"L-space slope set {c.sl} violates the [2g-1, inf) structure for g = "
                    f"{c.genus_exact}"
                )
            recips = SlopeSet(families=tuple(rec_families(1, None, None)))
            if not c.sl.intersect(recips).is_empty():
                trefoil = torus_alexander(3, 2)
                if c.alexander is not None and c.alexander != trefoil:
                    warnings.append(
                        "an L-space slope 1/n is reported but the knot is not a trefoil"
                    )
        return replace(c, warnings=tuple(dict.fromkeys(warnings)))

    # leaves ---------------------------------------------------------------

    def _trivial(self, e) -> Classification:
        cat = catalog_special("trivial")
        cert = Certificate(
            "trivial-catalog",
            "unknot: S_LO = {0}, S_L = Q - {0}",
            "surgery on the unknot gives lens spaces (finite groups) except the 0-slope S^1 x S^2",
            (computed("expression is the trivial knot"),),
        )
        return Classification(
            cat.slo_exact, cat.slo_exact, "exact", cat.sl, "yes", 0, 0,
            CanonicalAlexander(LaurentPolynomial.constant(1)), (cert,),
        )

    def _torus(self, e: Torus) -> Classification:
        cat = catalog_torus(e.p, e.q)
        a, b = abs(e.p), e.q
        g = (a - 1) * (b - 1) // 2
        alex = torus_alexander(e.p, e.q)
        cert = Certificate(
            "torus-catalog",
            f"T({e.p},{e.q}): S_LO = {cat.slo_exact}, S_L = {cat.sl}",
            "Moser: surgeries on torus knots are Seifert fibered; L-space and left-orderable "
            "slopes of torus knots are known exactly",
            (computed(f"torus parameters coprime, genus {g}, Delta = {alex}"),),
        )
        return Classification(cat.slo_exact, cat.slo_exact, "exact", cat.sl, "yes", g, g, alex, (cert,))

    def _twist(self, e: Twist) -> Classification:
        cat = catalog_special("twist", e.n)
        alex = twist_alexander(e.n)
        certs = [
            Certificate(
                "twist-catalog",
                f"twist knot with n = {e.n}: S_LO contains {cat.slo_lower}",
                "Tran: left-orderable surgeries on twist knots, including the slope-4 surgery",
                (computed(f"n = {e.n} > 1"),),
            ),
            _nonfibered_cert(f"Delta = {alex} is not monic (Burde-Zieschang)"),
        ]
        return Classification(cat.slo_lower, None, "empty", SlopeSet.empty(), "no", 1, 1, alex, tuple(certs))

    def _figureeight(self, e) -> Classification:
        cat = catalog_special("figure-eight")
        alex = CanonicalAlexander(LaurentPolynomial.from_coefficients([1, -3, 1]))
        certs = [
            Certificate(
                "figure-eight-catalog",
                f"figure-eight knot: S_LO contains {cat.slo_lower} (exactness unknown)",
                "Boyer-Gordon-Watson and Clay-Lidman-Watson: left-orderable surgeries on the "
                "figure-eight knot",
                (computed("expression is the figure-eight knot"),),
            ),
        ]
        certs.append(_obstruction_cert(alex, False))
        return Classification(cat.slo_lower, None, "empty", SlopeSet.empty(), "yes", 1, 1, alex, tuple(certs))

    # combinators ------------------------------------------------------------

    def _mirror(self, e: Mirror) -> Classification:
        c = self.classify(e.e)
        cert = Certificate(
            "mirror",
            "mirror image: every slope set is negated",
            "K*(r) is K(-r) with reversed orientation",
            (computed(f"child: {e.e.render()}"),),
        )
        neg = lambda s: None if s is None else s.negate()  # noqa: E731
        return replace(
            c,
            slo_lower=c.slo_lower.negate(),
            slo_exact=neg(c.slo_exact),
            sl=neg(c.sl),
            certificates=c.certificates + (cert,),
        )

    def _sum(self, e: Sum) -> Classification:
        if isinstance(e.a, Trivial):
            return self.classify(e.b)
        if isinstance(e.b, Trivial):
            return self.classify(e.a)
        ca, cb = self.classify(e.a), self.classify(e.b)
        certs = list(ca.certificates + cb.certificates)
        slo = ca.slo_lower.union(cb.slo_lower)
        certs.append(
            Certificate(
                "sum-union",
                f"S_LO(K # K') contains S_LO(K) u S_LO(K') = {slo}",
                "Clay-Watson: pattern slopes persist in irreducible satellites; "
                "Gordon: surgeries on composite knots are irreducible",
                (computed("both summands are nontrivial"),),
            )
        )
        alex = None
        if ca.alexander is not None and cb.alexander is not None:
            alex = multiply(ca.alexander, cb.alexander)
        fib = _and_fibered(ca.fibered, cb.fibered)
        if fib == "no" and ca.fibered != "no" and cb.fibered != "no":
            fib = "unknown"  # pragma: no cover
        if alex is not None and not is_monic(alex):
            fib = "no"
        sl_status, sl = "unknown", None
        obstruction = _obstruction_cert(alex, self.strict) if alex is not None else None
        if (
            self.on("torus-sum-coefficient")
            and _torus_summand(e.a)
            and _torus_summand(e.b)
            and alex is not None
        ):
            coef = coefficient_of_t(alex)
            certs.append(
                Certificate(
                    "torus-sum-coefficient",
                    f"coefficient of t in Delta(K # K') is {coef}, so S_L(K # K') is empty",
                    "coefficient of t is additive over a product of polynomials with constant "
                    "term 1; each torus-knot polynomial contributes -1; L-space knots have "
                    "coefficients +-1 (Ozsvath-Szabo)",
                    (
                        computed("both summands are torus knots (up to mirror)"),
                        computed(f"coefficient_of_t = {coef}"),
                    ),
                )
            )
            if abs(coef) >= 2:
                sl_status, sl = "empty", SlopeSet.empty()
        if obstruction is not None:
            certs.append(obstruction)
            sl_status, sl = "empty", SlopeSet.empty()
        if fib == "no" and sl_status != "empty":
            certs.append(_nonfibered_cert("a summand is not fibered (Gabai: sums fiber iff summands do)"))
            sl_status, sl = "empty", SlopeSet.empty()
        exact = _promote(slo, None, certs)
        g_lo = ca.genus_lower + cb.genus_lower
        g_ex = None
        if ca.genus_exact is not None and cb.genus_exact is not None:
            g_ex = ca.genus_exact + cb.genus_exact
        if alex is not None:
            g_lo = max(g_lo, genus_lower_bound(alex))
        return Classification(
            slo, exact, sl_status, sl, fib, g_lo, g_ex, alex, tuple(certs),
            ca.warnings + cb.warnings,
        )

    def _repeatedsum(self, e: RepeatedSum) -> Classification:
        c = self.classify(e.e)
        if e.p == 1 or isinstance(e.e, Trivial):
            return c
        certs = list(c.certificates)
        slo = c.slo_lower
        if self.on("repeated-sum-scale"):
            scaled = c.slo_lower.scale(e.p)
            slo = slo.union(scaled)
            certs.append(
                Certificate(
                    "repeated-sum-scale",
                    f"S_LO({e.p}K) contains {e.p} * S_LO(K) = {scaled}",
                    "pK has cyclic period p with factor K; " + "slopes lift through cyclic "
                    "branched covers",
                    (computed(f"p = {e.p}"),),
                )
            )
        certs.append(
            Certificate(
                "sum-union",
                f"S_LO({e.p}K) contains S_LO(K)",
                "Clay-Watson: pattern slopes persist in irreducible satellites",
                (computed("K is nontrivial"),),
            )
        )
        alex = None if c.alexander is None else CanonicalAlexander(c.alexander.poly**e.p)
        fib = c.fibered
        sl_status, sl = "unknown", None
        obstruction = _obstruction_cert(alex, self.strict) if alex is not None else None
        if obstruction is not None:
            certs.append(obstruction)
            sl_status, sl = "empty", SlopeSet.empty()
        elif fib == "no":
            certs.append(_nonfibered_cert("the summand is not fibered"))
            sl_status, sl = "empty", SlopeSet.empty()
        exact = _promote(slo, None, certs)
        return Classification(
            slo, exact, sl_status, sl, fib, e.p * c.genus_lower,
            None if c.genus_exact is None else e.p * c.genus_exact, alex, tuple(certs), c.warnings,
        )

    def _braidclosure(self, e: BraidClosure) -> Classification:
        d = braid_closure(e.braid)
        if not d.is_knot():
            raise DomainError(f"braid closure has {d.component_count} components, not a knot")
        c = self._diagram(Diagram(d))
        via_burau = alexander_from_braid(e.braid)
        if via_burau != c.alexander:
            raise DomainError("Burau and Fox Alexander polynomials disagree")  # pragma: no cover
        return c

    def _diagram(self, e: Diagram) -> Classification:
        d = e.diagram
        if not d.is_knot():
            raise DomainError(f"diagram has {d.component_count} components, not a knot")
        if d.crossing_count == 0:
            return self._trivial(Trivial())
        alex = alexander_from_diagram(d)
        certs = [
            Certificate(
                "alexander-fox",
                f"Delta = {alex} (Fox calculus on the diagram)",
                "Fox free differential calculus on the Wirtinger presentation",
                (computed(f"{d.crossing_count}-crossing knot diagram"),),
            )
        ]
        slo = ZERO_SET
        sl_status, sl = "unknown", None
        fib = "no" if not is_monic(alex) else "unknown"
        pred = diagram_predicates(d)
        prime_alt = pred.alternating and pred.reduced and pred.prime_diagram and pred.nonsplit
        if prime_alt and self.on("alternating-slopes"):
            fam = alternating_slopes(d, 1)
            slo = slo.union(fam)
            certs.append(
                Certificate(
                    "alternating-slopes",
                    f"S_LO(K) contains {fam}",
                    "Boyer-Gordon-Watson: 1/n surgeries on prime alternating knots "
                    "(special knots: one sign of n)",
                    (computed("diagram is reduced, prime, nonsplit and alternating"),),
                )
            )
        obstruction = _obstruction_cert(alex, self.strict)
        if obstruction is not None:
            certs.append(obstruction)
            sl_status, sl = "empty", SlopeSet.empty()
        elif fib == "no":
            certs.append(_nonfibered_cert(f"Delta = {alex} is not monic (Burde-Zieschang)"))
            sl_status, sl = "empty", SlopeSet.empty()
        elif prime_alt:
            torus_like = any(
                alex == torus_alexander(q, 2) for q in range(3, d.crossing_count + 1, 2)
            )
            if not torus_like:
                certs.append(
                    Certificate(
                        "alternating-sl-empty",
                        "S_L(K) is empty: alternating and not a (q,2)-torus knot",
                        "Ozsvath-Szabo: alternating knots with L-space surgeries are "
                        "(q,2)-torus knots",
                        (computed(f"Delta = {alex} matches no T(q,2), q <= {d.crossing_count}"),),
                    )
                )
                sl_status, sl = "empty", SlopeSet.empty()
        g = genus_lower_bound(alex)
        g_ex = g if prime_alt else None  # alternating knots: genus = span/2 (Murasugi, Crowell)
        return Classification(slo, None, sl_status, sl, fib, g, g_ex, alex, tuple(certs))

    def _periodic(self, e: Periodic) -> Classification:
        res = construct(e.tangle, e.p)
        certs = list(res.certificates)
        warnings: list[str] = []
        factor_alex = alexander_from_diagram(res.factor_diagram)
        if e.factor is not None:
            cf = self.classify(e.factor)
            if cf.alexander is not None and cf.alexander != factor_alex:
                raise DomainError(
                    f"factor expression has Delta = {cf.alexander} but the tangle closure has "
                    f"Delta = {factor_alex}"
                )
            certs.append(
                Certificate(
                    "factor-identification",
                    f"the tangle closure is the knot {e.factor.render()}",
                    "user-supplied identification of the factor knot",
                    (
                        computed(f"Alexander polynomials agree: {factor_alex}"),
                        asserted(f"tangle closure is isotopic to {e.factor.render()}"),
                    ),
                )
            )
        else:
            cf = self._diagram(Diagram(res.factor_diagram))
        certs.extend(cf.certificates)
        warnings.extend(cf.warnings)
        slo, cert = inferred_slo(cf.slo_lower, e.p)
        certs.append(cert)
        alex = alexander_from_diagram(res.diagram)
        check = murasugi_check(alex, factor_alex, e.p, res.axis_linking)
        if check is False:
            warnings.append("periodicity congruence failed for the constructed diagram")
        sl_status, sl = "unknown", None
        fib = "no" if not is_monic(alex) else "unknown"
        empty_cert = sl_empty_certificate(factor_alex)
        if empty_cert is not None:
            certs.append(empty_cert)
            sl_status, sl = "empty", SlopeSet.empty()
        elif cf.fibered == "no":
            certs.append(_nonfibered_cert("the factor knot is not fibered"))
            sl_status, sl = "empty", SlopeSet.empty()
        else:
            obstruction = _obstruction_cert(alex, self.strict)
            if obstruction is not None:
                certs.append(obstruction)
                sl_status, sl = "empty", SlopeSet.empty()
            elif "fiber" in e.assertions:
                certs.append(sl_empty_by_fiber_assertion(True, is_monic(factor_alex)))
                sl_status, sl = "empty", SlopeSet.empty()
        if "perp" in e.assertions:
            try:
                facts = alternating_periodic_facts(res.factor_diagram, True, e.p)
            except DomainError as exc:
                warnings.append(f"perpendicular-axis facts unavailable: {exc}")
                facts = []
            certs.extend(facts)
            if self.on("alternating-slopes") and facts:
                slo = slo.union(alternating_slopes(res.factor_diagram, e.p))
            if any(f.rule_id == "periodic-alternating-sl-empty" for f in facts):
                sl_status, sl = "empty", SlopeSet.empty()
        if e.link is not None:
            self._check_link(e, res, factor_alex)
            hyp = hyperbolicity_certificate(e.link, e.p)
            if hyp is not None:
                certs.append(replace(hyp, hypotheses=hyp.hypotheses + (_link_identity(e),)))
        g = max(e.p * cf.genus_lower, genus_lower_bound(alex))
        exact = _promote(slo, None, certs)
        return Classification(slo, exact, sl_status, sl, fib, g, None, alex, tuple(certs), tuple(warnings))

    def _check_link(self, e: Periodic, res, factor_alex) -> None:
        link = e.link
        if link.component_count != 2:
            raise DomainError("link diagram must have exactly two components (factor and axis C)")
        ai = link.component_index("C")
        k_label = link.labels[1 - ai]
        k_alex = alexander_from_diagram(sublink(link, [k_label]))
        if k_alex != factor_alex:
            raise DomainError(
                f"link factor component has Delta = {k_alex}, tangle closure has {factor_alex}"
            )
        lk = linking_number(link, k_label, "C")
        if abs(lk) != abs(res.axis_linking):
            raise DomainError(f"link has lk = {lk} but the tangle has axis linking {res.axis_linking}")

    def _satellite(self, e: Satellite) -> Classification:
        cp = self.classify(e.pattern)
        self.classify(e.companion)  # validates the companion expression
        certs = list(cp.certificates)
        slo = ZERO_SET
        if self.on("satellite") and e.irreducible:
            slo = cp.slo_lower
            certs.append(
                Certificate(
                    "satellite",
                    f"S_LO(K) contains the pattern's S_LO lower bound {slo}",
                    "Clay-Watson: for a satellite with pattern k, r in S_LO(k) and K(r) "
                    "irreducible imply r in S_LO(K)",
                    (asserted("K(r) is irreducible for every slope r"),),
                )
            )
        return Classification(slo, None, "unknown", None, "unknown", 0, None, None, tuple(certs), cp.warnings)


def _link_identity(e: Periodic):
    """Whether the supplied link diagram is provably the tangle's factor + axis."""
    try:
        same = e.link.canonical_code() == axis_link(e.tangle).canonical_code()
    except DomainError:
        same = False
    if same:
        return computed("link diagram equals the factor + axis diagram built from the tangle")
    return asserted("link diagram shows the tangle closure together with its axis")


def _and_fibered(a: str, b: str) -> str:
    if a == "yes" and b == "yes":
        return "yes"
    if a == "no" or b == "no":
        return "no"
    return "unknown"


def _torus_summand(e) -> bool:
    while isinstance(e, Mirror):
        e = e.e
    return isinstance(e, Torus)


def classify(e, rules: Iterable[str] | None = None, strict: bool = False) -> Classification:
    """Classify a knot expression.

    ``rules`` selects which optional rules (see ``OPTIONAL_RULES``) run;
    ``None`` enables all.  ``strict`` switches on the stronger L-space
    coefficient test.
    """
    active = OPTIONAL_RULES if rules is None else frozenset(rules)
    unknown = active - OPTIONAL_RULES
    if unknown:
        raise DomainError(f"unknown rule(s): {sorted(unknown)}")
    return _Engine(active, strict).classify(e)


def explain(c: Classification) -> str:
    """Human-readable certificate chain."""
    lines = [
        f"S_LO lower bound : {c.slo_lower}",
        f"S_LO exact       : {c.slo_exact if c.slo_exact is not None else 'unknown'}",
        f"S_L              : {c.sl_status if c.sl is None or c.sl_status == 'empty' else c.sl}",
        f"fibered          : {c.fibered}",
        f"genus            : >= {c.genus_lower}"
        + (f" (exact {c.genus_exact})" if c.genus_exact is not None else ""),
        f"Alexander        : {c.alexander if c.alexander is not None else 'unknown'}",
        "certificates:",
    ]
    for cert in c.certificates:
        lines.append(cert.render())
    if c.has_unverified:
        lines.append("NOTE: UNVERIFIED hypotheses above are user assertions, not computed facts")
    for w in c.warnings:
        lines.append(f"WARNING: {w}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# expression DSL


_TOK = re.compile(
    r"""\s*(?:
        (?P<str>"[^"]*")
      | (?P<int>[+-]?\d+(?![\w./]))
      | (?P<word>[A-Za-z0-9_./\\~:-]+)
      | (?P<punct>[(),=+|])
    )""",
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {text[pos:]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, base: Path):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.base = base

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None, kind=None):
        k, v = self.peek()
        if k is None:
            raise ParseError(f"unexpected end of expression {self.text!r}")
        if value is not None and v != value:
            raise ParseError(f"expected {value!r} but found {v!r} in {self.text!r}")
        if kind is not None and k != kind:
            raise ParseError(f"expected {kind} but found {v!r} in {self.text!r}")
        self.i += 1
        return v

    def integer(self) -> int:
        k, v = self.peek()
        if k != "int":
            raise ParseError(f"expected an integer but found {v!r}")
        self.i += 1
        return int(v)

    def path(self) -> Path:
        k, v = self.peek()
        if k == "str":
            self.i += 1
            v = v[1:-1]
        elif k in ("word", "int"):
            self.i += 1
        else:
            raise ParseError(f"expected a file path but found {v!r}")
        p = Path(v)
        return p if p.is_absolute() else self.base / p

    def read(self, p: Path) -> str:
        try:
            return p.read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {p}: {exc.strerror}") from None

    def expr(self):
        name = self.take(kind="word").lower()
        if name == "trivial":
            return Trivial()
        if name in ("fig8", "figure8", "figureeight"):
            return FigureEight()
        self.take("(")
        if name == "torus":
            p = self.integer()
            self.take(",")
            q = self.integer()
            self.take(")")
            return Torus(p, q)
        if name == "twist":
            n = self.integer()
            self.take(")")
            return Twist(n)
        if name == "mirror":
            e = self.expr()
            self.take(")")
            return Mirror(e)
        if name == "sum":
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take(")")
            return Sum(a, b)
        if name == "nsum":
            a = self.expr()
            self.take(",")
            p = self.integer()
            self.take(")")
            return RepeatedSum(a, p)
        if name == "braid":
            from .formats import parse_braid

            s = self.take(kind="str")[1:-1]
            self.take(")")
            return BraidClosure(parse_braid(s))
        if name == "pd":
            from .formats import parse_pd

            p = self.path()
            self.take(")")
            return Diagram(parse_pd(self.read(p)), source=str(p))
        if name == "periodic":
            return self.periodic()
        if name == "satellite":
            a = self.expr()
            self.take(",")
            b = self.expr()
            flags = set()
            if self.peek()[1] == ",":
                self.take(",")
                key = self.take(kind="word")
                if key != "assert":
                    raise ParseError(f"satellite accepts only assert=..., got {key!r}")
                self.take("=")
                flags = self.flags()
            self.take(")")
            if flags - {"irreducible"}:
                raise ParseError(f"satellite accepts only assert=irreducible, got {sorted(flags)}")
            return Satellite(a, b, "irreducible" in flags)
        raise ParseError(f"unknown expression {name!r}")

    def flags(self) -> set[str]:
        out = {self.take(kind="word")}
        while self.peek()[1] in ("+", "|"):
            self.take()
            out.add(self.take(kind="word"))
        return out

    def periodic(self):
        from .formats import parse_pd, parse_tangle

        tpath = self.path()
        self.take(",")
        p = self.integer()
        assertions: set[str] = set()
        factor = None
        link = None
        link_source = ""
        while self.peek()[1] == ",":
            self.take(",")
            key = self.take(kind="word")
            self.take("=")
            if key == "assert":
                assertions |= self.flags()
            elif key == "factor":
                factor = self.expr()
            elif key == "link":
                lp = self.path()
                link = parse_pd(self.read(lp))
                link_source = str(lp)
            else:
                raise ParseError(f"unknown periodic option {key!r}")
        self.take(")")
        bad = assertions - {"fiber", "perp", "irreducible"}
        if bad:
            raise ParseError(f"unknown assertion(s) {sorted(bad)}")
        tangle = parse_tangle(self.read(tpath))
        return Periodic(
            tangle, p, frozenset(assertions), factor, link, source=str(tpath),
            link_source=link_source,
        )


def parse_expr(text: str, base_dir: str | Path = ".") -> KnotExpr:
    """Parse the expression DSL (``sum(mirror(torus(3,2)),torus(3,2))`` etc.)."""
    parser = _Parser(text, Path(base_dir))
    e = parser.expr()
    if parser.i != len(parser.toks):
        raise ParseError(f"trailing input after expression: {parser.toks[parser.i][1]!r}")
    return e
