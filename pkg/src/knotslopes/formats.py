"""Text formats for diagrams, braid words and annular tangles.

PD text (one item per line, ``#`` starts a comment)::

    X(1,5,2,4)+        crossing record, optional sign suffix + or -
    X[2,6,3,5]         square brackets are accepted too
    loop 9             crossingless component made of edge 9
    component K: 1     name the component containing edge 1

Several crossings may share a line, separated by spaces or commas, and the
whole list may be wrapped as ``PD[...]``.  A missing sign is inferred from
the orientation (the under-strand always enters at the first slot).

Braid text: ``BR n: w1 w2 ... wk`` with signed generator indices.

Tangle text: a PD block plus ``L: e1+, e2-, ...`` and ``R: ...`` lines
listing boundary edges in order with the sign of the strand there.
"""

from __future__ import annotations

import re

from .diagram import AnnularTangle, BraidWord, Crossing, PlanarDiagram, _from_records
from .errors import DomainError, ParseError

__all__ = [
    "parse_braid",
    "parse_pd",
    "parse_tangle",
    "render_braid",
    "render_pd",
    "render_tangle",
]

_CROSSING = re.compile(r"X\s*[\(\[]\s*([^\)\]]*)[\)\]]\s*([+-])?")
_LOOP = re.compile(r"loop\s+(-?\d+)\s*$")
_COMPONENT = re.compile(r"component\s+([A-Za-z0-9_]+)\s*:\s*(-?\d+)\s*$")
_BOUNDARY = re.compile(r"([LR])\s*:\s*(.*)$")
_ENDPOINT = re.compile(r"^(-?\d+)\s*([+-])$")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_crossings(line: str, lineno: int) -> list[tuple[tuple[int, ...], int | None]]:
    s = line
    m = re.fullmatch(r"PD\s*[\[\(](.*)[\]\)]", s)
    if m:
        s = m.group(1)
    out = []
    pos = 0
    while pos < len(s):
        while pos < len(s) and s[pos] in " \t,":
            pos += 1
        if pos >= len(s):
            break
        m = _CROSSING.match(s, pos)
        if not m:
            raise ParseError(f"line {lineno}: cannot parse {s[pos:]!r}")
        parts = [p.strip() for p in m.group(1).split(",")]
        if len(parts) != 4:
            raise ParseError(f"line {lineno}: crossing needs 4 edges, got {len(parts)}")
        try:
            edges = tuple(int(p) for p in parts)
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer edge in {m.group(0)!r}") from None
        sign = {"+": 1, "-": -1, None: None}[m.group(2)]
        out.append((edges, sign))
        pos = m.end()
    return out


def _parse_pd_lines(lines):
    records = []
    loops = []
    names = {}
    rest = []
    for lineno, raw in lines:
        line = _strip(raw)
        if not line:
            continue
        if m := _LOOP.match(line):
            loops.append(int(m.group(1)))
        elif m := _COMPONENT.match(line):
            names[int(m.group(2))] = m.group(1)
        elif line.startswith(("X", "PD")):
            records.extend(_parse_crossings(line, lineno))
        else:
            rest.append((lineno, line))
    return records, loops, names, rest


def parse_pd(text: str) -> PlanarDiagram:
    records, loops, names, rest = _parse_pd_lines(enumerate(text.splitlines(), 1))
    if rest:
        lineno, line = rest[0]
        raise ParseError(f"line {lineno}: unrecognized line {line!r}")
    if not records and not loops:
        raise ParseError("empty diagram (use 'loop 1' for the unknot)")
    edges = {e for r, _ in records for e in r} | set(loops)
    for e in names:
        if e not in edges:
            raise ParseError(f"component label refers to unknown edge {e}")
    # a name given for any edge labels the whole component
    return _from_records(records, loops, names)


def render_pd(d: PlanarDiagram) -> str:
    lines = []
    for c in d.crossings:
        a, b, cc, dd = c.edges
        lines.append(f"X({a},{b},{cc},{dd}){'+' if c.sign > 0 else '-'}")
    for e in d.free_loops():
        lines.append(f"loop {e}")
    for comp, label in zip(d.components, d.labels):
        lines.append(f"component {label}: {comp[0]}")
    return "\n".join(lines) + "\n"


def parse_braid(text: str) -> BraidWord:
    s = _strip(text)
    m = re.fullmatch(r"BR\s+(\d+)\s*:\s*(.*)", s)
    if not m:
        raise ParseError(f"braid must look like 'BR n: w1 w2 ...', got {text!r}")
    n = int(m.group(1))
    body = m.group(2).replace(",", " ").split()
    try:
        letters = tuple(int(w) for w in body)
    except ValueError:
        raise ParseError(f"braid letters must be signed integers: {m.group(2)!r}") from None
    try:
        return BraidWord(n, letters)
    except DomainError as exc:
        raise ParseError(str(exc)) from None


def render_braid(b: BraidWord) -> str:
    body = " ".join(str(x) for x in b.letters)
    return f"BR {b.strand_count}: {body}".rstrip()


def _parse_boundary(entries: str, lineno: int) -> list[tuple[int, int]]:
    out = []
    for item in entries.split(","):
        item = item.strip()
        if not item:
            continue
        m = _ENDPOINT.match(item)
        if not m:
            raise ParseError(f"line {lineno}: boundary entry {item!r} must look like '5+' or '5-'")
        out.append((int(m.group(1)), 1 if m.group(2) == "+" else -1))
    return out


def parse_tangle(text: str) -> AnnularTangle:
    records, loops, names, rest = _parse_pd_lines(enumerate(text.splitlines(), 1))
    if loops:
        raise DomainError("annular tangles may not contain closed components")
    left = right = None
    for lineno, line in rest:
        m = _BOUNDARY.match(line)
        if not m:
            raise ParseError(f"line {lineno}: unrecognized line {line!r}")
        entries = _parse_boundary(m.group(2), lineno)
        if m.group(1) == "L":
            left = entries
        else:
            right = entries
    if left is None or right is None:
        raise ParseError("tangle needs both an 'L:' and an 'R:' line")
    if len(left) != len(right):
        raise ParseError(f"L has {len(left)} endpoints but R has {len(right)}")
    for i, ((_, sl), (_, sr)) in enumerate(zip(left, right)):
        if sl != sr:
            raise DomainError(f"endpoint {i + 1}: L and R signs differ")
    crossings = []
    for edges, sign in records:
        if sign is None:
            raise ParseError("tangle crossings need an explicit sign suffix")
        crossings.append(Crossing(edges, sign))
    return AnnularTangle(
        tuple(crossings),
        tuple(e for e, _ in left),
        tuple(e for e, _ in right),
        tuple(s for _, s in left),
    )


def render_tangle(t: AnnularTangle) -> str:
    lines = []
    for c in t.crossings:
        a, b, cc, dd = c.edges
        lines.append(f"X({a},{b},{cc},{dd}){'+' if c.sign > 0 else '-'}")

    def side(edges):
        return ", ".join(f"{e}{'+' if s > 0 else '-'}" for e, s in zip(edges, t.signs))

    lines.append(f"L: {side(t.left)}")
    lines.append(f"R: {side(t.right)}")
    return "\n".join(lines) + "\n"
