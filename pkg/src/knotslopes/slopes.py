"""Exact subsets of the rationals used as surgery-slope sets.

A :class:`SlopeSet` is a finite union of

* rational intervals (endpoints exact, ``±inf`` always open),
* isolated rationals,
* discrete families ``c*Z`` restricted to an integer range (``kind="mul"``)
  or ``c/n`` for ``n`` in a one-signed integer range (``kind="rec"``).

Families appear in lower bounds such as ``[-4, 4] u Z`` or
``{p/n : n > 0}``.  For family-free sets the canonical form is unique, so
``==`` is set equality; with families it is a normal form that is stable
under the operations here but not guaranteed unique for every overlap
pattern.  :meth:`SlopeSet.equivalent` decides equality semantically for
family-free operands and falls back to the normal form otherwise.

Text grammar::

    set      := "Q" | "empty" | term ("u" term)*
    term     := interval | "{" rat ("," rat)* "}" | family | "Q"
    interval := ("(" | "[") end "," end (")" | "]")
    end      := rat | "inf" | "+inf" | "-inf"
    family   := [rat "*"] "Z" [range] | rat "/Z" range
    range    := "[" int-or-inf ".." int-or-inf "]"
    rat      := ["-"] digits ["/" digits]
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import DomainError, ParseError

__all__ = [
    "Family",
    "Interval",
    "SlopeCatalog",
    "SlopeSet",
    "catalog_special",
    "catalog_torus",
    "lspace_structure_check",
    "parse_slope",
]

Rat = Fraction


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_slope(x)
    raise TypeError(f"expected a rational, got {type(x).__name__}")


def parse_slope(text: str) -> Fraction:
    """Parse ``m`` or ``m/n`` (n > 0 after sign normalization)."""
    m = re.fullmatch(r"\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+))?\s*", text)
    if not m:
        raise ParseError(f"not a rational slope: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# pieces


@dataclass(frozen=True, order=True)
class Interval:
    """Interval with optional endpoints (None = infinite, always open)."""

    lo: Fraction | None
    lo_closed: bool
    hi: Fraction | None
    hi_closed: bool

    def __post_init__(self):
        if self.lo is None and self.lo_closed or self.hi is None and self.hi_closed:
            raise DomainError("infinite endpoints are always open")
        if self.lo is not None:
            object.__setattr__(self, "lo", _rat(self.lo))
        if self.hi is not None:
            object.__setattr__(self, "hi", _rat(self.hi))

    @classmethod
    def closed(cls, lo, hi):
        return cls(_rat(lo), True, _rat(hi), True)

    @classmethod
    def open(cls, lo, hi):
        return cls(None if lo is None else _rat(lo), False, None if hi is None else _rat(hi), False)

    @classmethod
    def point(cls, x):
        return cls.closed(x, x)

    def is_empty(self) -> bool:
        if self.lo is None or self.hi is None:
            return False
        if self.lo < self.hi:
            return False
        return not (self.lo == self.hi and self.lo_closed and self.hi_closed)

    def is_point(self) -> bool:
        return self.lo is not None and self.lo == self.hi and self.lo_closed and self.hi_closed

    def contains(self, r: Fraction) -> bool:
        if self.lo is not None and (r < self.lo or (r == self.lo and not self.lo_closed)):
            return False
        if self.hi is not None and (r > self.hi or (r == self.hi and not self.hi_closed)):
            return False
        return True

    def intersect(self, other: Interval) -> Interval:
        lo, lc = _max_lo((self.lo, self.lo_closed), (other.lo, other.lo_closed))
        hi, hc = _min_hi((self.hi, self.hi_closed), (other.hi, other.hi_closed))
        return Interval(lo, lc, hi, hc)

    def negate(self) -> Interval:
        return Interval(
            None if self.hi is None else -self.hi,
            self.hi_closed,
            None if self.lo is None else -self.lo,
            self.lo_closed,
        )

    def scale(self, p: Fraction) -> Interval:
        return Interval(
            None if self.lo is None else self.lo * p,
            self.lo_closed,
            None if self.hi is None else self.hi * p,
            self.hi_closed,
        )

    def render(self) -> str:
        if self.is_point():
            return "{" + _fmt(self.lo) + "}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        lo = "-inf" if self.lo is None else _fmt(self.lo)
        hi = "inf" if self.hi is None else _fmt(self.hi)
        return f"{left}{lo},{hi}{right}"

    def sort_key(self):
        lo = (0, 0) if self.lo is None else (1, self.lo)
        return (lo, 0 if self.lo_closed else 1)


def _max_lo(a, b):
    if a[0] is None:
        return b
    if b[0] is None:
        return a
    if a[0] != b[0]:
        return a if a[0] > b[0] else b
    return (a[0], a[1] and b[1])


def _min_hi(a, b):
    if a[0] is None:
        return b
    if b[0] is None:
        return a
    if a[0] != b[0]:
        return a if a[0] < b[0] else b
    return (a[0], a[1] and b[1])


def _touch(a: Interval, b: Interval) -> bool:
    """Whether a (sorted before b) overlaps or abuts b so their union is an interval."""
    if a.hi is None or b.lo is None:
        return True
    if a.hi > b.lo:
        return True
    if a.hi == b.lo:
        return a.hi_closed or b.lo_closed
    return False


def _merge(intervals: Iterable[Interval]) -> list[Interval]:
    items = sorted((i for i in intervals if not i.is_empty()), key=Interval.sort_key)
    out: list[Interval] = []
    for iv in items:
        if out and _touch(out[-1], iv):
            last = out[-1]
            hi, hc = _max_hi((last.hi, last.hi_closed), (iv.hi, iv.hi_closed))
            out[-1] = Interval(last.lo, last.lo_closed, hi, hc)
        else:
            out.append(iv)
    return out


def _max_hi(a, b):
    if a[0] is None or b[0] is None:
        return (None, False)
    if a[0] != b[0]:
        return a if a[0] > b[0] else b
    return (a[0], a[1] or b[1])


def _complement_intervals(intervals: list[Interval]) -> list[Interval]:
    """Complement in Q of merged, sorted intervals."""
    out = []
    lo, lc = None, False
    for iv in intervals:
        if iv.lo is not None:
            gap = Interval(lo, lc, iv.lo, not iv.lo_closed)
            if not gap.is_empty():
                out.append(gap)
        if iv.hi is None:
            return out
        lo, lc = iv.hi, not iv.hi_closed
    out.append(Interval(lo, lc, None, False))
    return out


# ---------------------------------------------------------------------------
# discrete families


def _floor(x: Fraction) -> int:
    return math.floor(x)


def _ceil(x: Fraction) -> int:
    return math.ceil(x)


def _range_and(a, b):
    lo = a[0] if b[0] is None else b[0] if a[0] is None else max(a[0], b[0])
    hi = a[1] if b[1] is None else b[1] if a[1] is None else min(a[1], b[1])
    return (lo, hi)


def _range_empty(r) -> bool:
    return r[0] is not None and r[1] is not None and r[0] > r[1]


ALL = (None, None)
NONE = (1, 0)


@dataclass(frozen=True, order=True)
class Family:
    """``{coef*n}`` (kind "mul") or ``{coef/n}`` (kind "rec") for n in [n_min, n_max]."""

    kind: str
    coef: Fraction
    n_min: int | None
    n_max: int | None

    def __post_init__(self):
        if self.kind not in ("mul", "rec"):
            raise DomainError(f"unknown family kind {self.kind!r}")
        object.__setattr__(self, "coef", _rat(self.coef))
        if self.coef <= 0:
            raise DomainError("family coefficient must be positive")
        if self.kind == "rec":
            lo, hi = self.n_min, self.n_max
            if not ((lo is not None and lo >= 1) or (hi is not None and hi <= -1)):
                raise DomainError("a reciprocal family's range must be one-signed and avoid 0")

    @property
    def finite(self) -> bool:
        return self.n_min is not None and self.n_max is not None

    @property
    def empty(self) -> bool:
        return _range_empty((self.n_min, self.n_max))

    def value(self, n: int) -> Fraction:
        return self.coef * n if self.kind == "mul" else self.coef / n

    def members(self) -> list[Fraction]:
        if not self.finite:
            raise DomainError("infinite family")
        return [self.value(n) for n in range(self.n_min, self.n_max + 1)]

    def index_of(self, r: Fraction) -> int | None:
        if self.kind == "mul":
            q = r / self.coef
        else:
            if r == 0:
                return None
            q = self.coef / r
        if q.denominator != 1:
            return None
        n = q.numerator
        if self.n_min is not None and n < self.n_min:
            return None
        if self.n_max is not None and n > self.n_max:
            return None
        return n

    def contains(self, r: Fraction) -> bool:
        return self.index_of(r) is not None

    def with_range(self, r) -> Family | None:
        rr = _range_and((self.n_min, self.n_max), r)
        if _range_empty(rr):
            return None
        return Family(self.kind, self.coef, rr[0], rr[1])

    def _positive_side(self) -> bool:
        return self.n_min is not None and self.n_min >= 1

    def range_for(self, iv: Interval):
        """Integer n-range (within this family's own range) with value(n) in ``iv``."""
        r = (self.n_min, self.n_max)
        if iv.lo is not None:
            r = _range_and(r, self._cmp(iv.lo, ">=" if iv.lo_closed else ">"))
        if iv.hi is not None:
            r = _range_and(r, self._cmp(iv.hi, "<=" if iv.hi_closed else "<"))
        return r

    def _cmp(self, x: Fraction, op: str):
        c = self.coef
        if self.kind == "mul":
            y = x / c
            return {
                ">": (_floor(y) + 1, None),
                ">=": (_ceil(y), None),
                "<": (None, _ceil(y) - 1),
                "<=": (None, _floor(y)),
            }[op]
        if self._positive_side():
            return _rec_positive(c, x, op)
        flipped = {">": "<", ">=": "<=", "<": ">", "<=": ">="}[op]
        lo, hi = _rec_positive(c, -x, flipped)
        if (lo, hi) == NONE:
            return NONE
        return (None if hi is None else -hi, None if lo is None else -lo)

    def negate(self) -> Family:
        return Family(
            self.kind,
            self.coef,
            None if self.n_max is None else -self.n_max,
            None if self.n_min is None else -self.n_min,
        )

    def scale(self, p: Fraction) -> Family:
        return Family(self.kind, self.coef * p, self.n_min, self.n_max)

    def render(self) -> str:
        rng = ""
        if self.n_min is not None or self.n_max is not None:
            lo = "-inf" if self.n_min is None else str(self.n_min)
            hi = "inf" if self.n_max is None else str(self.n_max)
            rng = f"[{lo}..{hi}]"
        if self.kind == "mul":
            head = "Z" if self.coef == 1 else f"{_fmt(self.coef)}*Z"
        else:
            head = f"{_fmt(self.coef)}/Z"
        return head + rng

    def sort_key(self):
        return (self.kind, self.coef, -math.inf if self.n_min is None else self.n_min)


def _rec_positive(c: Fraction, x: Fraction, op: str):
    """n-range for n >= 1 with c/n (op) x."""
    if op == ">":
        return (1, None) if x <= 0 else (1, _ceil(c / x) - 1)
    if op == ">=":
        return (1, None) if x <= 0 else (1, _floor(c / x))
    if op == "<":
        return NONE if x <= 0 else (max(1, _floor(c / x) + 1), None)
    if op == "<=":
        return NONE if x <= 0 else (max(1, _ceil(c / x)), None)
    raise ValueError(op)


def rec_families(coef, n_min: int | None, n_max: int | None) -> list[Family]:
    """``{coef/n}`` over a range that may straddle 0 (0 itself is skipped)."""
    out = []
    neg = _range_and((n_min, n_max), (None, -1))
    pos = _range_and((n_min, n_max), (1, None))
    for r in (neg, pos):
        if not _range_empty(r):
            out.append(Family("rec", coef, r[0], r[1]))
    return out


def _subset(f: Family, g: Family) -> bool:
    if f.kind != g.kind:
        return False
    if f.kind == "rec" and f._positive_side() != g._positive_side():
        return False
    k = g.coef / f.coef if f.kind == "rec" else f.coef / g.coef
    if k.denominator != 1:
        return False
    k = k.numerator
    lo = None if f.n_min is None else f.n_min * k
    hi = None if f.n_max is None else f.n_max * k
    if g.n_min is not None and (lo is None or lo < g.n_min):
        return False
    if g.n_max is not None and (hi is None or hi > g.n_max):
        return False
    return True


def _lcm_rat(a: Fraction, b: Fraction) -> Fraction:
    """Smallest positive rational that is an integer multiple of both a and b."""
    num = math.lcm(a.numerator, b.numerator)
    den = math.gcd(a.denominator, b.denominator)
    return Fraction(num, den)


def _family_meet(f: Family, g: Family) -> tuple[list[Family], list[Fraction]]:
    if f.kind == g.kind == "mul":
        step = _lcm_rat(f.coef, g.coef)
        r = ALL
        for h in (f, g):
            mult = (step / h.coef).numerator  # n_h = k * mult
            lo = None if h.n_min is None else _ceil(Fraction(h.n_min, mult))
            hi = None if h.n_max is None else _floor(Fraction(h.n_max, mult))
            r = _range_and(r, (lo, hi))
        if _range_empty(r):
            return [], []
        return [Family("mul", step, r[0], r[1])], []
    if f.kind == g.kind == "rec":
        if f._positive_side() != g._positive_side():
            return [], []
        step = _lcm_rat(1 / f.coef, 1 / g.coef)  # reciprocal values lie in step*Z
        r = ALL
        for h in (f, g):
            mult = (step * h.coef).numerator  # n_h = k * mult
            lo = None if h.n_min is None else _ceil(Fraction(h.n_min, mult))
            hi = None if h.n_max is None else _floor(Fraction(h.n_max, mult))
            r = _range_and(r, (lo, hi))
        if _range_empty(r):
            return [], []
        return rec_families(1 / step, r[0], r[1]), []
    m, rc = (f, g) if f.kind == "mul" else (g, f)
    bound = _floor(rc.coef / m.coef)
    pts = []
    for n in range(-bound, bound + 1):
        v = m.value(n)
        if m.contains(v) and rc.contains(v):
            pts.append(v)
    return [], pts


# ---------------------------------------------------------------------------
# slope sets


@dataclass(frozen=True)
class SlopeSet:
    intervals: tuple[Interval, ...] = ()
    points: tuple[Fraction, ...] = ()
    families: tuple[Family, ...] = ()
    _canonical: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        if not self._canonical:
            iv, pts, fam = _canonicalize(
                list(self.intervals), [_rat(p) for p in self.points], list(self.families)
            )
            object.__setattr__(self, "intervals", tuple(iv))
            object.__setattr__(self, "points", tuple(pts))
            object.__setattr__(self, "families", tuple(fam))
            object.__setattr__(self, "_canonical", True)

    # constructors ---------------------------------------------------------

    @classmethod
    def empty(cls) -> SlopeSet:
        return cls()

    @classmethod
    def all(cls) -> SlopeSet:
        return cls((Interval(None, False, None, False),))

    @classmethod
    def of(cls, *items) -> SlopeSet:
        iv, pts, fam = [], [], []
        for it in items:
            if isinstance(it, Interval):
                iv.append(it)
            elif isinstance(it, Family):
                fam.append(it)
            elif isinstance(it, SlopeSet):
                iv += it.intervals
                pts += it.points
                fam += it.families
            else:
                pts.append(_rat(it))
        return cls(tuple(iv), tuple(pts), tuple(fam))

    @classmethod
    def interval(cls, lo, hi, lo_closed=False, hi_closed=False) -> SlopeSet:
        return cls(
            (
                Interval(
                    None if lo is None else _rat(lo),
                    lo_closed and lo is not None,
                    None if hi is None else _rat(hi),
                    hi_closed and hi is not None,
                ),
            )
        )

    @classmethod
    def integers(cls) -> SlopeSet:
        return cls(families=(Family("mul", 1, None, None),))

    # predicates -----------------------------------------------------------

    def has_families(self) -> bool:
        return bool(self.families)

    def is_empty(self) -> bool:
        return not (self.intervals or self.points or self.families)

    def is_all_of_Q(self) -> bool:
        return self.intervals == (Interval(None, False, None, False),)

    def member(self, r) -> bool:
        r = _rat(r)
        return (
            any(i.contains(r) for i in self.intervals)
            or r in self.points
            or any(f.contains(r) for f in self.families)
        )

    __contains__ = member

    def issubset(self, other: SlopeSet) -> bool:
        return self.intersect(other) == self

    def equivalent(self, other: SlopeSet) -> bool:
        return self == other

    # algebra --------------------------------------------------------------

    def negate(self) -> SlopeSet:
        return SlopeSet(
            tuple(i.negate() for i in self.intervals),
            tuple(-p for p in self.points),
            tuple(f.negate() for f in self.families),
        )

    def __neg__(self):
        return self.negate()

    def scale(self, p) -> SlopeSet:
        p = _rat(p)
        if p <= 0:
            raise DomainError("scale factor must be positive")
        return SlopeSet(
            tuple(i.scale(p) for i in self.intervals),
            tuple(x * p for x in self.points),
            tuple(f.scale(p) for f in self.families),
        )

    def union(self, other: SlopeSet) -> SlopeSet:
        return SlopeSet(
            self.intervals + other.intervals,
            self.points + other.points,
            self.families + other.families,
        )

    __or__ = union

    def intersect(self, other: SlopeSet) -> SlopeSet:
        ivs, pts, fams = [], [], []
        for a in self.intervals:
            for b in other.intervals:
                c = a.intersect(b)
                if not c.is_empty():
                    ivs.append(c)
        pts += [p for p in self.points if other.member(p)]
        pts += [p for p in other.points if self.member(p)]
        for f in self.families:
            for b in other.intervals:
                g = f.with_range(f.range_for(b))
                if g is not None:
                    fams.append(g)
        for f in other.families:
            for a in self.intervals:
                g = f.with_range(f.range_for(a))
                if g is not None:
                    fams.append(g)
        for f in self.families:
            for g in other.families:
                fs, ps = _family_meet(f, g)
                fams += fs
                pts += ps
        return SlopeSet(tuple(ivs), tuple(pts), tuple(fams))

    __and__ = intersect

    def complement_in_Q(self) -> SlopeSet:
        if self.families:
            raise DomainError("complement of a set with discrete families is not representable")
        pieces = list(self.intervals) + [Interval.point(p) for p in self.points]
        return SlopeSet(tuple(_complement_intervals(_merge(pieces))))

    def difference(self, other: SlopeSet) -> SlopeSet:
        return self.intersect(other.complement_in_Q())

    # text -----------------------------------------------------------------

    def render(self) -> str:
        if self.is_empty():
            return "empty"
        if self.is_all_of_Q():
            return "Q"
        items = [(i.sort_key(), i) for i in self.intervals]
        items += [(((1, p), 0), p) for p in self.points]
        items.sort(key=lambda kv: kv[0])
        parts: list = []
        for _, it in items:
            if isinstance(it, Interval):
                parts.append(it.render())
            elif parts and isinstance(parts[-1], list):
                parts[-1].append(it)
            else:
                parts.append([it])
        text = [p if isinstance(p, str) else "{" + ", ".join(map(_fmt, p)) + "}" for p in parts]
        return " u ".join(text + [f.render() for f in self.families])

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"SlopeSet.parse({self.render()!r})"

    @classmethod
    def parse(cls, text: str) -> SlopeSet:
        return _parse_set(text)

    def to_json(self) -> list[dict]:
        out = []
        for i in self.intervals:
            out.append(
                {
                    "lo": None if i.lo is None else _fmt(i.lo),
                    "lo_closed": i.lo_closed,
                    "hi": None if i.hi is None else _fmt(i.hi),
                    "hi_closed": i.hi_closed,
                }
            )
        for p in self.points:
            out.append({"lo": _fmt(p), "lo_closed": True, "hi": _fmt(p), "hi_closed": True})
        for f in self.families:
            out.append(
                {
                    "family": f.kind,
                    "coef": _fmt(f.coef),
                    "n_min": None if f.n_min is None else str(f.n_min),
                    "n_max": None if f.n_max is None else str(f.n_max),
                }
            )
        return out

    @classmethod
    def from_json(cls, data: list[dict]) -> SlopeSet:
        ivs, fams = [], []
        try:
            for obj in data:
                if "family" in obj:
                    fams.append(
                        Family(
                            obj["family"],
                            parse_slope(obj["coef"]),
                            None if obj["n_min"] is None else int(obj["n_min"]),
                            None if obj["n_max"] is None else int(obj["n_max"]),
                        )
                    )
                else:
                    ivs.append(
                        Interval(
                            None if obj["lo"] is None else parse_slope(obj["lo"]),
                            bool(obj["lo_closed"]),
                            None if obj["hi"] is None else parse_slope(obj["hi"]),
                            bool(obj["hi_closed"]),
                        )
                    )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed slope-set JSON: {exc}") from None
        return cls(tuple(ivs), (), tuple(fams))


def _canonicalize(intervals, points, families):
    fams = []
    pts = set(points)
    for f in families:
        if f.finite:
            pts.update(f.members())
        elif not f.empty:
            fams.append(f)
    ivs = []
    for i in intervals:
        if i.is_point():
            pts.add(i.lo)
        elif not i.is_empty():
            ivs.append(i)
    state = None
    while True:
        ivs = _merge(ivs)
        # close open endpoints covered by a point or a family member
        for k, iv in enumerate(ivs):
            lo_c = iv.lo_closed or (iv.lo is not None and _covered(iv.lo, pts, fams))
            hi_c = iv.hi_closed or (iv.hi is not None and _covered(iv.hi, pts, fams))
            ivs[k] = Interval(iv.lo, lo_c, iv.hi, hi_c)
        ivs = _merge(ivs)
        pts = {p for p in pts if not any(i.contains(p) for i in ivs)}
        # restrict families to the gaps between intervals
        if ivs:
            trimmed = []
            for f in fams:
                for g in _complement_intervals(ivs):
                    h = f.with_range(f.range_for(g))
                    if h is None:
                        continue
                    if h.finite:
                        pts.update(h.members())
                    else:
                        trimmed.append(h)
            fams = trimmed
        # grow families by adjacent points
        grown = []
        for f in set(fams):
            lo, hi = f.n_min, f.n_max
            while lo is not None and (f.kind == "mul" or lo - 1 != 0) and f.value(lo - 1) in pts:
                pts.discard(f.value(lo - 1))
                lo -= 1
            while hi is not None and (f.kind == "mul" or hi + 1 != 0) and f.value(hi + 1) in pts:
                pts.discard(f.value(hi + 1))
                hi += 1
            grown.append(Family(f.kind, f.coef, lo, hi))
        fams = _merge_families(grown)
        pts = {p for p in pts if not any(f.contains(p) for f in fams)}
        new = (tuple(ivs), tuple(sorted(pts)), tuple(fams))
        if new == state:
            return list(new[0]), list(new[1]), list(new[2])
        state = new


def _merge_families(fams: list[Family]) -> list[Family]:
    merged: list[Family] = []
    for f in sorted(set(fams), key=Family.sort_key):
        if merged:
            g = merged[-1]
            same_side = f.kind == "mul" or f._positive_side() == g._positive_side()
            if (g.kind, g.coef) == (f.kind, f.coef) and same_side:
                if g.n_max is None or f.n_min is None or f.n_min <= g.n_max + 1:
                    lo = None if g.n_min is None or f.n_min is None else min(g.n_min, f.n_min)
                    hi = None if g.n_max is None or f.n_max is None else max(g.n_max, f.n_max)
                    merged[-1] = Family(f.kind, f.coef, lo, hi)
                    continue
        merged.append(f)
    kept = []
    for i, f in enumerate(merged):
        if any(j != i and _subset(f, g) for j, g in enumerate(merged)):
            continue
        kept.append(f)
    return sorted(kept, key=Family.sort_key)


def _covered(x, points, fams) -> bool:
    return x in points or any(f.contains(x) for f in fams)


# ---------------------------------------------------------------------------
# parsing


_TOKEN = re.compile(
    r"""\s*(?:
      (?P<interval>[\(\[]\s*[^,\[\]\(\)]+\s*,\s*[^,\[\]\(\)]+\s*[\)\]])
    | (?P<points>\{[^}]*\})
    | (?P<family>(?:[+]?\d+(?:/\d+)?\s*(?P<op>[*/])\s*)?Z(?:\s*\[[^\]]*\])?)
    | (?P<all>Q)
    | (?P<empty>empty|∅)
    )\s*""",
    re.VERBOSE,
)


def _parse_end(text: str, lower: bool) -> Fraction | None:
    t = text.strip().replace("∞", "inf")
    if t in ("inf", "+inf"):
        if lower:
            raise ParseError("+inf cannot be a lower endpoint")
        return None
    if t == "-inf":
        if not lower:
            raise ParseError("-inf cannot be an upper endpoint")
        return None
    return parse_slope(t)


def _parse_range(text: str) -> tuple[int | None, int | None]:
    m = re.fullmatch(r"\[\s*([+-]?\d+|[+-]?inf)\s*\.\.\s*([+-]?\d+|[+-]?inf)\s*\]", text.strip())
    if not m:
        raise ParseError(f"bad family range {text!r}; expected [lo..hi]")
    lo = None if m.group(1).lstrip("+-") == "inf" else int(m.group(1))
    hi = None if m.group(2).lstrip("+-") == "inf" else int(m.group(2))
    if m.group(1) in ("inf", "+inf") or m.group(2) == "-inf":
        raise ParseError(f"bad family range {text!r}")
    return lo, hi


def _parse_set(text: str) -> SlopeSet:
    s = text.strip()
    if not s:
        raise ParseError("empty slope-set expression")
    terms = re.split(r"\s+u\s+|\s*∪\s*", s)
    ivs, pts, fams = [], [], []
    for term in terms:
        m = _TOKEN.fullmatch(term)
        if not m:
            raise ParseError(f"cannot parse slope-set term {term!r}")
        if m.group("interval"):
            body = m.group("interval").strip()
            lo_s, hi_s = body[1:-1].split(",")
            lo = _parse_end(lo_s, True)
            hi = _parse_end(hi_s, False)
            lc, hc = body[0] == "[", body[-1] == "]"
            if (lo is None and lc) or (hi is None and hc):
                raise ParseError(f"infinite endpoint must be open in {body!r}")
            ivs.append(Interval(lo, lc, hi, hc))
        elif m.group("points"):
            inner = m.group("points").strip()[1:-1].strip()
            if inner:
                pts.extend(parse_slope(x) for x in inner.split(","))
        elif m.group("family"):
            fm = re.fullmatch(
                r"(?:(?P<c>[+]?\d+(?:/\d+)?)\s*(?P<op>[*/])\s*)?Z\s*(?P<r>\[.*\])?",
                m.group("family").strip(),
            )
            coef = parse_slope(fm.group("c")) if fm.group("c") else Fraction(1)
            rng = _parse_range(fm.group("r")) if fm.group("r") else (None, None)
            if coef <= 0:
                raise ParseError("family coefficient must be positive")
            if fm.group("op") == "/":
                if not fm.group("r"):
                    raise ParseError("reciprocal family needs an explicit range, e.g. 3/Z[1..inf]")
                fams.extend(rec_families(coef, *rng))
            else:
                if not _range_empty(rng):
                    fams.append(Family("mul", coef, *rng))
        elif m.group("all"):
            ivs.append(Interval(None, False, None, False))
        # empty adds nothing
    return SlopeSet(tuple(ivs), tuple(pts), tuple(fams))


# ---------------------------------------------------------------------------
# catalogs


@dataclass(frozen=True)
class SlopeCatalog:
    """Known slope data: a lower bound for S_LO, its exact value when known, and S_L."""

    slo_lower: SlopeSet
    slo_exact: SlopeSet | None
    sl: SlopeSet | None  # None: unknown
    note: str = ""


def _torus_params(p: int, q: int) -> tuple[int, int]:
    if abs(p) < 2 or abs(q) < 2:
        raise DomainError(f"T({p},{q}) is degenerate (needs |p|, |q| >= 2)")
    if math.gcd(p, q) != 1:
        raise DomainError(f"T({p},{q}) is not a knot: gcd != 1")
    return p, q


def catalog_torus(p: int, q: int) -> SlopeCatalog:
    """Exact sets for T(p,q); the sign of p*q selects the handedness."""
    _torus_params(p, q)
    a, b = abs(p), abs(q)
    c = a * b - a - b
    slo = SlopeSet.interval(None, c)
    sl = SlopeSet.interval(c, None, lo_closed=True)
    if p * q < 0:
        slo, sl = slo.negate(), sl.negate()
    return SlopeCatalog(slo, slo, sl)


def catalog_special(name: str, n: int | None = None) -> SlopeCatalog:
    key = name.strip().lower().replace("-", "").replace("_", "")
    if key == "trivial":
        zero = SlopeSet.of(0)
        return SlopeCatalog(zero, zero, zero.complement_in_Q())
    if key in ("figureeight", "fig8"):
        lower = SlopeSet.interval(-4, 4, True, True).union(SlopeSet.integers())
        return SlopeCatalog(lower, None, SlopeSet.empty(), note="exactness of the lower bound unknown")
    if key == "twist":
        if n is None or n <= 1:
            raise DomainError("twist-knot catalog requires n > 1")
        return SlopeCatalog(
            SlopeSet.interval(-4 * n, 4, hi_closed=True), None, SlopeSet.empty()
        )
    raise DomainError(f"no catalog entry for {name!r}")


def lspace_structure_check(sl: SlopeSet, genus: int) -> bool:
    """Whether ``sl`` is empty, [2g-1, inf) or (-inf, -2g+1]."""
    if sl.is_empty():
        return True
    if genus < 1:
        return False
    c = 2 * genus - 1
    return sl == SlopeSet.interval(c, None, lo_closed=True) or sl == SlopeSet.interval(
        None, -c, hi_closed=True
    )
