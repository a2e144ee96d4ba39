"""Knot and link diagrams: braid words, PD codes and annular tangles.

PD convention: a crossing record ``(a, b, c, d)`` lists edge ids
counterclockwise starting from the incoming under-strand, so the under-strand
runs ``a -> c``.  The sign is stored explicitly.  For a positive crossing the
over-strand runs ``d -> b``; for a negative one ``b -> d``.  Braid generator
``sigma_i`` (positive letter) produces a positive crossing.

Every :class:`PlanarDiagram` is normalized on construction: edges are
renumbered ``1..E`` along the strand orientation, component by component, so
equality of normalized diagrams is a syntactic comparison.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import DomainError

__all__ = [
    "AnnularTangle",
    "BraidWord",
    "Crossing",
    "DiagramPredicates",
    "PlanarDiagram",
    "annular_closure",
    "axis_link",
    "braid_closure",
    "connected_sum",
    "diagram_predicates",
    "disjoint_union",
    "linking_number",
    "mirror",
    "sublink",
    "tangle_power",
]


# ---------------------------------------------------------------------------
# braid words


@dataclass(frozen=True)
class BraidWord:
    strand_count: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.strand_count < 1:
            raise DomainError(f"strand_count must be >= 1, got {self.strand_count}")
        for x in self.letters:
            if x == 0 or abs(x) > self.strand_count - 1:
                raise DomainError(
                    f"letter {x} out of range for a {self.strand_count}-strand braid"
                )

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        if other.strand_count != self.strand_count:
            raise DomainError("cannot concatenate braids on different strand counts")
        return BraidWord(self.strand_count, self.letters + other.letters)

    def power(self, p: int) -> BraidWord:
        if p < 0:
            raise DomainError("braid power must be non-negative")
        return BraidWord(self.strand_count, self.letters * p)

    def inverse(self) -> BraidWord:
        return BraidWord(self.strand_count, tuple(-x for x in reversed(self.letters)))

    def permutation(self) -> tuple[int, ...]:
        """perm[i] = final position (0-based) of the strand starting at position i."""
        pos = list(range(self.strand_count))  # pos[j] = strand currently at position j
        for x in self.letters:
            i = abs(x) - 1
            pos[i], pos[i + 1] = pos[i + 1], pos[i]
        perm = [0] * self.strand_count
        for j, s in enumerate(pos):
            perm[s] = j
        return tuple(perm)

    def cycle_count(self) -> int:
        return _cycle_count(self.permutation())


def _cycle_count(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    count = 0
    for i in range(len(perm)):
        if not seen[i]:
            count += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return count


# ---------------------------------------------------------------------------
# crossings and diagrams


@dataclass(frozen=True, order=True)
class Crossing:
    edges: tuple[int, int, int, int]
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError(f"crossing sign must be +1 or -1, got {self.sign}")

    @property
    def under_in(self) -> int:
        return self.edges[0]

    @property
    def under_out(self) -> int:
        return self.edges[2]

    @property
    def over_in(self) -> int:
        return self.edges[3] if self.sign > 0 else self.edges[1]

    @property
    def over_out(self) -> int:
        return self.edges[1] if self.sign > 0 else self.edges[3]

    def heads(self) -> tuple[int, int]:
        return self.under_in, self.over_in

    def tails(self) -> tuple[int, int]:
        return self.under_out, self.over_out

    def is_head_position(self, pos: int) -> bool:
        return pos == 0 or (pos == 3 and self.sign > 0) or (pos == 1 and self.sign < 0)


def _geo_crossing(slots: Sequence[tuple[int, bool, bool]]) -> Crossing:
    """Crossing from 4 counterclockwise slots ``(edge, incoming, over)``."""
    u = next(i for i, (_, inc, over) in enumerate(slots) if inc and not over)
    rot = [slots[(u + k) % 4] for k in range(4)]
    sign = 1 if rot[3][1] else -1
    return Crossing(tuple(s[0] for s in rot), sign)


@dataclass(frozen=True)
class PlanarDiagram:
    """An oriented, normalized link diagram.

    ``components`` lists each component's edges in traversal order; a
    crossingless component is a single edge that appears in no crossing.
    """

    crossings: tuple[Crossing, ...]
    components: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.components):
            raise DomainError("one label per component required")
        if len(set(self.labels)) != len(self.labels):
            raise DomainError("component labels must be distinct")
        heads: dict[int, int] = defaultdict(int)
        tails: dict[int, int] = defaultdict(int)
        for c in self.crossings:
            for e in c.heads():
                heads[e] += 1
            for e in c.tails():
                tails[e] += 1
        comp_edges = [e for comp in self.components for e in comp]
        if len(comp_edges) != len(set(comp_edges)):
            raise DomainError("an edge belongs to two components")
        for e in set(heads) | set(tails):
            if heads[e] != 1 or tails[e] != 1:
                raise DomainError(f"edge {e} must appear once as head and once as tail")
        if set(heads) - set(comp_edges):
            raise DomainError("crossing edges missing from components")
        for comp in self.components:
            if len(comp) == 1 and comp[0] not in heads:
                continue
            for e in comp:
                if e not in heads:
                    raise DomainError(f"edge {e} in a multi-edge component has no crossing")

    # basic counts ---------------------------------------------------------

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def component_count(self) -> int:
        return len(self.components)

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(e for comp in self.components for e in comp)

    @property
    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def is_knot(self) -> bool:
        return self.component_count == 1

    def component_of(self) -> dict[int, int]:
        """edge -> component index."""
        return {e: i for i, comp in enumerate(self.components) for e in comp}

    def component_index(self, label) -> int:
        label = str(label)
        try:
            return self.labels.index(label)
        except ValueError:
            raise DomainError(f"unknown component label {label!r}") from None

    def free_loops(self) -> list[int]:
        used = {e for c in self.crossings for e in c.edges}
        return [comp[0] for comp in self.components if len(comp) == 1 and comp[0] not in used]

    def pd_code(self) -> list[tuple[int, int, int, int, int]]:
        return [c.edges + (c.sign,) for c in self.crossings]

    def __str__(self):
        from .formats import render_pd

        return render_pd(self)

    # canonical comparison -------------------------------------------------

    def canonical_code(self, limit: int = 200_000) -> tuple:
        """Labeling-independent code: minimum over component orders and basepoints.

        Two diagrams have equal codes iff they differ only by edge relabeling
        and choice of basepoints.  Component labels are ignored.
        """
        comps = self.components
        sizes = [len(c) for c in comps]
        total = math.factorial(len(comps)) * math.prod(sizes)
        if total > limit:
            raise DomainError("too many relabelings for a brute-force canonical code")
        best = None
        for order in itertools.permutations(range(len(comps))):
            for starts in itertools.product(*(range(sizes[i]) for i in order)):
                relabel = {}
                n = 0
                for ci, s in zip(order, starts):
                    comp = comps[ci]
                    for k in range(len(comp)):
                        n += 1
                        relabel[comp[(s + k) % len(comp)]] = n
                code = tuple(
                    sorted(
                        (tuple(relabel[e] for e in c.edges), c.sign) for c in self.crossings
                    )
                )
                key = (tuple(sizes[i] for i in order), code)
                if best is None or key < best:
                    best = key
        return best

    # faces ---------------------------------------------------------------

    def faces(self) -> list[list[tuple[int, int]]]:
        """Faces as lists of corners ``(crossing index, i)``.

        Corner ``i`` lies between positions ``i`` and ``i+1`` of the record.
        """
        return _faces(self.crossings)


def _occurrences(crossings: Sequence[Crossing]) -> dict[int, list[tuple[int, int]]]:
    occ: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for x, c in enumerate(crossings):
        for pos, e in enumerate(c.edges):
            occ[e].append((x, pos))
    return occ


def _faces(crossings: Sequence[Crossing]) -> list[list[tuple[int, int]]]:
    occ = _occurrences(crossings)
    seen = set()
    faces = []
    for x in range(len(crossings)):
        for i in range(4):
            if (x, i) in seen:
                continue
            face = []
            corner = (x, i)
            while corner not in seen:
                seen.add(corner)
                face.append(corner)
                cx, ci = corner
                pos = (ci + 1) % 4
                e = crossings[cx].edges[pos]
                a, b = occ[e]
                other = b if a == (cx, pos) else a
                corner = other
            faces.append(face)
    return faces


def _graph_parts(crossings: Sequence[Crossing]) -> list[set[int]]:
    """Connected parts of the 4-valent crossing graph (crossing indices)."""
    occ = _occurrences(crossings)
    parent = list(range(len(crossings)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for pair in occ.values():
        if len(pair) == 2:
            a, b = find(pair[0][0]), find(pair[1][0])
            if a != b:
                parent[a] = b
    parts: dict[int, set[int]] = defaultdict(set)
    for i in range(len(crossings)):
        parts[find(i)].add(i)
    return list(parts.values())


# ---------------------------------------------------------------------------
# assembly: orientation, validation, normalization


def _assemble(
    geo: Sequence[Sequence[Hashable]],
    *,
    fixed_under: Sequence[bool] | bool = True,
    signs: Sequence[int | None] | None = None,
    free_loops: Iterable[Hashable] = (),
    names: Mapping[Hashable, str] | None = None,
) -> PlanarDiagram:
    """Orient, validate and normalize a diagram given geometric crossings.

    ``geo[x]`` lists four edge labels counterclockwise with the under-strand
    at positions 0 and 2.  Where ``fixed_under[x]`` is true, position 0 is
    the incoming under-strand.  Orientation of components lacking such
    information is taken from ``signs`` when possible, else chosen by a
    deterministic default.
    """
    n = len(geo)
    geo = [tuple(g) for g in geo]
    if isinstance(fixed_under, bool):
        fixed_under = [fixed_under] * n
    if signs is None:
        signs = [None] * n
    free_loops = list(free_loops)
    names = dict(names or {})

    occ: dict[Hashable, list[tuple[int, int]]] = defaultdict(list)
    for x, g in enumerate(geo):
        if len(g) != 4:
            raise DomainError(f"crossing {x} must have 4 edges")
        for pos, e in enumerate(g):
            occ[e].append((x, pos))
    for e, where in occ.items():
        if len(where) != 2:
            raise DomainError(f"edge {e} appears {len(where)} times; expected exactly 2")
    for e in free_loops:
        if e in occ:
            raise DomainError(f"free loop edge {e} also appears in a crossing")
    if len(set(free_loops)) != len(free_loops):
        raise DomainError("duplicate free loop edge")

    def other(e, slot):
        a, b = occ[e]
        return b if a == slot else a

    # trace components as cyclic sequences of entry slots
    visited = set()
    comps: list[list[tuple[int, int]]] = []
    for x in range(n):
        for pos in range(4):
            if (x, pos) in visited:
                continue
            entries = []
            slot = (x, pos)
            while slot not in visited:
                sx, sp = slot
                out = (sx, (sp + 2) % 4)
                visited.add(slot)
                visited.add(out)
                entries.append(slot)
                slot = other(geo[sx][out[1]], out)
            comps.append(entries)

    # orientation: +1 keeps traced direction, -1 reverses it
    orient: list[int | None] = [None] * len(comps)
    where_comp: dict[tuple[int, int], tuple[int, bool]] = {}
    for ci, entries in enumerate(comps):
        for sx, sp in entries:
            where_comp[(sx, sp)] = (ci, True)
            where_comp[(sx, (sp + 2) % 4)] = (ci, False)

    def decide(ci, value, why):
        if orient[ci] is None:
            orient[ci] = value
            return True
        if orient[ci] != value:
            raise DomainError(f"inconsistent orientation ({why})")
        return False

    for ci, entries in enumerate(comps):
        for sx, sp in entries:
            if sp in (0, 2) and fixed_under[sx]:
                decide(ci, 1 if sp == 0 else -1, f"crossing {sx} under-strand")

    def entering_pos(x, strand_pos_pair):
        # position where the strand through {p, p+2} enters, if orientation known
        p = strand_pos_pair
        ci, is_entry = where_comp[(x, p)]
        if orient[ci] is None:
            return None
        return p if (is_entry == (orient[ci] == 1)) else (p + 2) % 4

    while True:
        progress = True
        while progress:
            progress = False
            for x in range(n):
                s = signs[x]
                if s is None:
                    continue
                u = entering_pos(x, 0)
                o = entering_pos(x, 1)
                if u is not None and o is None:
                    want = (u + 3) % 4 if s > 0 else (u + 1) % 4
                    ci, is_entry = where_comp[(x, want)]
                    progress |= decide(ci, 1 if is_entry else -1, f"sign of crossing {x}")
                elif o is not None and u is None:
                    want = (o + 1) % 4 if s > 0 else (o + 3) % 4
                    ci, is_entry = where_comp[(x, want)]
                    progress |= decide(ci, 1 if is_entry else -1, f"sign of crossing {x}")
        pending = [ci for ci in range(len(comps)) if orient[ci] is None]
        if not pending:
            break
        orient[pending[0]] = 1

    # oriented records
    records = []
    for x in range(n):
        u = entering_pos(x, 0)
        o = entering_pos(x, 1)
        rot = tuple(geo[x][(u + k) % 4] for k in range(4))
        sign = 1 if (o - u) % 4 == 3 else -1
        if signs[x] is not None and signs[x] != sign:
            raise DomainError(f"crossing {x}: stated sign {signs[x]} contradicts orientation")
        records.append((rot, sign))

    # oriented edge sequences
    edge_seqs: list[list[Hashable]] = []
    for ci, entries in enumerate(comps):
        if orient[ci] == 1:
            seq = [geo[sx][(sp + 2) % 4] for sx, sp in entries]
        else:
            seq = [geo[sx][sp] for sx, sp in reversed(entries)]
        edge_seqs.append(seq)
    for e in free_loops:
        edge_seqs.append([e])

    planar_check = [Crossing(r, s) for r, s in records]
    _check_planar(planar_check)

    return _normalize(planar_check, edge_seqs, names)


def _sort_key(e):
    return (0, e) if isinstance(e, int) else (1, repr(e))


def _normalize(crossings, edge_seqs, names) -> PlanarDiagram:
    starts = []
    for seq in edge_seqs:
        k = min(range(len(seq)), key=lambda i: _sort_key(seq[i]))
        starts.append(seq[k:] + seq[:k])
    order = sorted(range(len(starts)), key=lambda i: _sort_key(starts[i][0]))
    relabel = {}
    components = []
    labels = []
    nid = 0
    for rank, i in enumerate(order):
        comp = []
        for e in starts[i]:
            nid += 1
            relabel[e] = nid
            comp.append(nid)
        components.append(tuple(comp))
        found = {str(names[e]) for e in starts[i] if e in names}
        if len(found) > 1:
            raise DomainError(f"component given conflicting labels {sorted(found)}")
        labels.append(found.pop() if found else None)
    used = {l for l in labels if l is not None}
    counter = 0
    for k, l in enumerate(labels):
        if l is None:
            while str(counter) in used:
                counter += 1
            labels[k] = str(counter)
            used.add(str(counter))
            counter += 1
    new_crossings = tuple(
        sorted(Crossing(tuple(relabel[e] for e in c.edges), c.sign) for c in crossings)
    )
    return PlanarDiagram(new_crossings, tuple(components), tuple(labels))


def _check_planar(crossings: Sequence[Crossing]) -> None:
    if not crossings:
        return
    parts = _graph_parts(crossings)
    expected = sum(len(p) + 2 for p in parts)
    got = len(_faces(crossings))
    if got != expected:
        raise DomainError(f"PD code is not planar ({got} faces, expected {expected})")


def _from_records(
    records: Sequence[tuple[Sequence[Hashable], int | None]],
    free_loops: Iterable[Hashable] = (),
    names: Mapping[Hashable, str] | None = None,
) -> PlanarDiagram:
    """Assemble from oriented PD records ``((a, b, c, d), sign-or-None)``."""
    return _assemble(
        [r for r, _ in records],
        fixed_under=True,
        signs=[s for _, s in records],
        free_loops=free_loops,
        names=names,
    )


def _names_of(d: PlanarDiagram) -> dict[int, str]:
    return {comp[0]: lab for comp, lab in zip(d.components, d.labels)}


# ---------------------------------------------------------------------------
# operations


def braid_closure(b: BraidWord) -> PlanarDiagram:
    """Closed braid diagram; positive letters give positive crossings."""
    n = b.strand_count
    cur = list(range(1, n + 1))  # bottom edge ids
    nxt = n + 1
    records = []
    for letter in b.letters:
        i = abs(letter) - 1
        x, y = cur[i], cur[i + 1]
        x2, y2 = nxt, nxt + 1
        nxt += 2
        if letter > 0:
            slots = [(y, True, False), (y2, False, True), (x2, False, False), (x, True, True)]
        else:
            slots = [(y, True, True), (y2, False, False), (x2, False, True), (x, True, False)]
        c = _geo_crossing(slots)
        records.append((c.edges, c.sign))
        cur[i], cur[i + 1] = x2, y2
    glue = {bottom: top for bottom, top in zip(range(1, n + 1), cur) if top != bottom}
    records = [(tuple(glue.get(e, e) for e in r), s) for r, s in records]
    loops = [i for i in range(1, n + 1) if cur[i - 1] == i]
    return _from_records(records, free_loops=loops)


def mirror(d: PlanarDiagram) -> PlanarDiagram:
    """Swap over and under at every crossing."""
    records = []
    for c in d.crossings:
        a, b, cc, dd = c.edges
        if c.sign > 0:
            records.append(((dd, a, b, cc), -1))
        else:
            records.append(((b, cc, dd, a), 1))
    return _from_records(records, d.free_loops(), _names_of(d))


def disjoint_union(d1: PlanarDiagram, d2: PlanarDiagram) -> PlanarDiagram:
    """Split union; the second diagram's edges are shifted past the first's."""
    off = max(d1.edges, default=0)
    records = [(c.edges, c.sign) for c in d1.crossings]
    records += [(tuple(e + off for e in c.edges), c.sign) for c in d2.crossings]
    loops = d1.free_loops() + [e + off for e in d2.free_loops()]
    names = {}
    for comp, lab in zip(d1.components, d1.labels):
        names[comp[0]] = f"a{lab}"
    for comp, lab in zip(d2.components, d2.labels):
        names[comp[0] + off] = f"b{lab}"
    return _from_records(records, loops, names)


def connected_sum(
    d1: PlanarDiagram, d2: PlanarDiagram, e1: int | None = None, e2: int | None = None
) -> PlanarDiagram:
    """Band-join two knot diagrams at edges ``e1`` and ``e2``."""
    if not d1.is_knot() or not d2.is_knot():
        raise DomainError("connected_sum needs two knot diagrams (1 component each)")
    if d1.crossing_count == 0:
        return d2
    if d2.crossing_count == 0:
        return d1
    e1 = d1.components[0][0] if e1 is None else e1
    e2 = d2.components[0][0] if e2 is None else e2
    if e1 not in d1.edges or e2 not in d2.edges:
        raise DomainError("connected_sum edge not present in diagram")
    off = max(d1.edges)
    e2s = e2 + off
    recs1 = [list(c.edges) for c in d1.crossings]
    recs2 = [[e + off for e in c.edges] for c in d2.crossings]

    def swap_head(recs, crossings, edge, new):
        for r, c in zip(recs, crossings):
            for pos in range(4):
                if r[pos] == edge and c.is_head_position(pos):
                    r[pos] = new
                    return
        raise DomainError(f"edge {edge} has no head")  # pragma: no cover

    swap_head(recs1, d1.crossings, e1, e2s)
    swap_head(recs2, d2.crossings, e2s, e1)
    records = [(tuple(r), c.sign) for r, c in zip(recs1, d1.crossings)]
    records += [(tuple(r), c.sign) for r, c in zip(recs2, d2.crossings)]
    return _from_records(records)


def linking_number(d: PlanarDiagram, a, b) -> int:
    """Half the signed count of crossings between components ``a`` and ``b``."""
    ia, ib = d.component_index(a), d.component_index(b)
    if ia == ib:
        raise DomainError("linking_number needs two distinct components")
    comp = d.component_of()
    total = 0
    for c in d.crossings:
        pair = {comp[c.under_in], comp[c.over_in]}
        if pair == {ia, ib}:
            total += c.sign
    return total // 2


def sublink(d: PlanarDiagram, keep: Iterable) -> PlanarDiagram:
    """Delete every component whose label is not in ``keep``."""
    keep_idx = {d.component_index(k) for k in keep}
    comp = d.component_of()
    parent: dict[int, int] = {}

    def find(e):
        parent.setdefault(e, e)
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    records = []
    for c in d.crossings:
        ku = comp[c.under_in] in keep_idx
        ko = comp[c.over_in] in keep_idx
        if ku and ko:
            records.append(c)
        elif ku:
            parent[find(c.under_in)] = find(c.under_out)
        elif ko:
            parent[find(c.over_in)] = find(c.over_out)
    recs = [(tuple(find(e) for e in c.edges), c.sign) for c in records]
    used = {e for r, _ in recs for e in r}
    loops = []
    names = {}
    for i in sorted(keep_idx):
        reps = {find(e) for e in d.components[i]}
        rep = min(reps)
        names[rep] = d.labels[i]
        if not reps & used:
            loops.append(rep)
        else:
            for r in reps:
                names[r] = d.labels[i]
    return _from_records(recs, loops, names)


# ---------------------------------------------------------------------------
# predicates


@dataclass(frozen=True)
class DiagramPredicates:
    alternating: bool
    reduced: bool
    positive: bool
    negative: bool
    nonsplit: bool
    prime_diagram: bool
    writhe: int
    component_count: int
    crossing_count: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _is_alternating(d: PlanarDiagram) -> bool:
    by_head: dict[int, tuple[int, bool]] = {}
    for x, c in enumerate(d.crossings):
        by_head[c.under_in] = (x, False)
        by_head[c.over_in] = (x, True)
    for comp in d.components:
        passes = [by_head[e][1] for e in comp if e in by_head]
        for i in range(len(passes)):
            if passes[i] == passes[i - 1]:
                return False
    return True


def _nugatory(d: PlanarDiagram) -> set[int]:
    bad = set()
    for face in d.faces():
        xs = [x for x, _ in face]
        seen = set()
        for x in xs:
            if x in seen:
                bad.add(x)
            seen.add(x)
    return bad


def _r2_bigons(d: PlanarDiagram) -> list[tuple[int, int]]:
    """Bigon faces whose two crossings share an over-strand (removable by an R2 move)."""
    out = []
    for face in d.faces():
        if len(face) != 2:
            continue
        (x, i), (y, j) = face
        if x == y:
            continue
        cx, cy = d.crossings[x], d.crossings[y]
        # the edge leaving corner (x, i) sits at position i+1 of x and position j of y
        over_x = (i + 1) % 2 == 1
        over_y = j % 2 == 1
        if over_x == over_y:
            out.append((x, y))
    return out


def _two_edge_cut(d: PlanarDiagram) -> bool:
    occ = _occurrences(d.crossings)
    edges = [(w[0][0], w[1][0]) for w in occ.values() if w[0][0] != w[1][0]]
    vertices = {x for e in edges for x in e}
    if len(vertices) < 2:
        return False
    for i, j in itertools.combinations(range(len(edges)), 2):
        adj: dict[int, list[int]] = defaultdict(list)
        for k, (u, v) in enumerate(edges):
            if k in (i, j):
                continue
            adj[u].append(v)
            adj[v].append(u)
        start = next(iter(vertices))
        stack, seen = [start], {start}
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(seen) < len(vertices):
            return True
    return False


def diagram_predicates(d: PlanarDiagram) -> DiagramPredicates:
    """Combinatorial predicates used by the alternating-link certificates.

    ``reduced`` means no nugatory crossing and no bigon that an R2 move would
    remove; an alternating diagram never has the latter, so for alternating
    diagrams this is the usual notion.  ``prime_diagram`` is a purely
    diagrammatic check: no pair of edges disconnects the crossing graph.
    """
    parts = _graph_parts(d.crossings) if d.crossings else []
    n_loops = len(d.free_loops())
    pieces = len(parts) + n_loops
    nonsplit = pieces <= 1
    signs = {c.sign for c in d.crossings}
    if len(parts) > 1:
        prime = False
    else:
        prime = not _two_edge_cut(d)
    return DiagramPredicates(
        alternating=_is_alternating(d),
        reduced=not _nugatory(d) and not _r2_bigons(d),
        positive=signs <= {1},
        negative=signs <= {-1},
        nonsplit=nonsplit,
        prime_diagram=prime,
        writhe=d.writhe,
        component_count=d.component_count,
        crossing_count=d.crossing_count,
    )


# ---------------------------------------------------------------------------
# annular tangles


@dataclass(frozen=True)
class AnnularTangle:
    """A tangle in an annulus cut open along a meridian disk of the axis.

    ``left[i]`` / ``right[i]`` are the edge ids meeting the cut at point i
    on either side; closing the annulus glues ``right[i]`` to ``left[i]``.
    ``signs[i]`` is +1 when the strand crosses the cut from the right side
    into the left side (i.e. enters the tangle at ``left[i]``).
    """

    crossings: tuple[Crossing, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]
    signs: tuple[int, ...]
    through_permutation: tuple[int, ...] = field(init=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        object.__setattr__(self, "signs", tuple(self.signs))
        k = len(self.left)
        if k < 1 or len(self.right) != k or len(self.signs) != k:
            raise DomainError("tangle needs k >= 1 left/right endpoints and k signs")
        if any(s not in (1, -1) for s in self.signs):
            raise DomainError("endpoint signs must be +1/-1")
        object.__setattr__(self, "through_permutation", self._trace())

    @property
    def k(self) -> int:
        return len(self.left)

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def axis_linking(self) -> int:
        return sum(self.signs)

    def _trace(self) -> tuple[int, ...]:
        occ = _occurrences(self.crossings)
        lset = {e: i for i, e in enumerate(self.left)}
        rset = {e: i for i, e in enumerate(self.right)}
        if len(lset) != self.k or len(rset) != self.k:
            raise DomainError("boundary edge ids must be distinct")
        for e, where in occ.items():
            boundary = e in lset or e in rset
            want = 1 if boundary else 2
            if e in lset and e in rset:
                want = 0
            if len(where) != want:
                raise DomainError(f"edge {e} appears {len(where)} times; expected {want}")
        for e in set(lset) | set(rset):
            if e not in occ and not (e in lset and e in rset):
                raise DomainError(f"boundary edge {e} does not meet the tangle")

        def role(e):  # +1 head (enters a crossing), -1 tail
            (x, pos), = occ[e]
            return 1 if self.crossings[x].is_head_position(pos) else -1

        for i, e in enumerate(self.left):
            if e in rset:
                continue
            if role(e) != self.signs[i]:
                raise DomainError(f"orientation mismatch at left endpoint {i + 1}")
        for i, e in enumerate(self.right):
            if e in lset:
                continue
            if role(e) != -self.signs[i]:
                raise DomainError(f"orientation mismatch at right endpoint {i + 1}")

        perm = [None] * self.k
        reached = set()
        for i, e in enumerate(self.left):
            reached.add(e)
            if e in rset:
                perm[i] = rset[e]
            else:
                x, pos = occ[e][0]
                while True:
                    out = (x, (pos + 2) % 4)
                    cur = self.crossings[x].edges[out[1]]
                    reached.add(cur)
                    if cur in rset:
                        perm[i] = rset[cur]
                        break
                    if cur in lset:
                        raise DomainError("tangle strand returns to the left side (turnback)")
                    a, b = occ[cur]
                    x, pos = b if a == out else a
            j = perm[i]
            if self.signs[i] != self.signs[j]:
                raise DomainError(f"strand from L{i + 1} to R{j + 1} changes orientation sign")
        if sorted(perm) != list(range(self.k)):
            raise DomainError("tangle strands do not pair left and right endpoints")
        if set(occ) - reached:
            raise DomainError("tangle contains a closed component")
        return tuple(perm)

    # constructors -----------------------------------------------------------

    @classmethod
    def from_braid(cls, b: BraidWord) -> AnnularTangle:
        n = b.strand_count
        cur = list(range(1, n + 1))
        nxt = n + 1
        crossings = []
        for letter in b.letters:
            i = abs(letter) - 1
            x, y = cur[i], cur[i + 1]
            x2, y2 = nxt, nxt + 1
            nxt += 2
            if letter > 0:
                slots = [(y, True, False), (y2, False, True), (x2, False, False), (x, True, True)]
            else:
                slots = [(y, True, True), (y2, False, False), (x2, False, True), (x, True, False)]
            crossings.append(_geo_crossing(slots))
            cur[i], cur[i + 1] = x2, y2
        return cls(tuple(crossings), tuple(range(1, n + 1)), tuple(cur), (1,) * n)

    @classmethod
    def from_knot_arc(cls, d: PlanarDiagram, edge: int | None = None) -> AnnularTangle:
        """Cut a knot diagram open at one edge (a k=1 tangle whose closure is ``d``)."""
        if not d.is_knot():
            raise DomainError("from_knot_arc needs a knot diagram")
        edge = d.components[0][0] if edge is None else edge
        if d.crossing_count == 0:
            return cls((), (edge,), (edge,), (1,))
        new = max(d.edges) + 1
        crossings = []
        done = False
        for c in d.crossings:
            edges = list(c.edges)
            for pos in range(4):
                if edges[pos] == edge and c.is_head_position(pos) and not done:
                    edges[pos] = new
                    done = True
            crossings.append(Crossing(tuple(edges), c.sign))
        # strand enters at the left via `new` and leaves at the right via `edge`
        return cls(tuple(crossings), (new,), (edge,), (1,))


def _relabel_tangle(t: AnnularTangle, f) -> tuple[list[Crossing], list, list]:
    cr = [Crossing(tuple(f(e) for e in c.edges), c.sign) for c in t.crossings]
    return cr, [f(e) for e in t.left], [f(e) for e in t.right]


class _UF:
    def __init__(self):
        self.p = {}

    def find(self, x):
        self.p.setdefault(x, x)
        while self.p[x] != x:
            self.p[x] = self.p[self.p[x]]
            x = self.p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[max(ra, rb)] = min(ra, rb)


def tangle_power(t: AnnularTangle, p: int) -> AnnularTangle:
    """Stack ``p`` copies of ``t`` around the annulus (right of copy j to left of j+1)."""
    if p < 1:
        raise DomainError("tangle power must be >= 1")
    if p == 1:
        return t
    span = max([max(c.edges) for c in t.crossings] + list(t.left) + list(t.right)) + 1
    uf = _UF()
    copies = []
    for j in range(p):
        copies.append(_relabel_tangle(t, lambda e, j=j: e + j * span))
    for j in range(p - 1):
        for r, l in zip(copies[j][2], copies[j + 1][1]):
            uf.union(r, l)
    crossings = tuple(
        Crossing(tuple(uf.find(e) for e in c.edges), c.sign) for cr, _, _ in copies for c in cr
    )
    left = tuple(uf.find(e) for e in copies[0][1])
    right = tuple(uf.find(e) for e in copies[-1][2])
    return AnnularTangle(crossings, left, right, t.signs)


def annular_closure(t: AnnularTangle) -> tuple[PlanarDiagram, int]:
    """Close the annulus; returns the diagram and the axis linking number."""
    uf = _UF()
    for r, l in zip(t.right, t.left):
        uf.union(r, l)
    records = [(tuple(uf.find(e) for e in c.edges), c.sign) for c in t.crossings]
    used = {e for r, _ in records for e in r}
    loops = sorted({uf.find(e) for e in t.left} - used)
    return _from_records(records, loops), t.axis_linking


def axis_link(t: AnnularTangle, factor_label: str = "K", axis_label: str = "C") -> PlanarDiagram:
    """Diagram of the closure together with the axis drawn as a belt at the cut.

    The belt passes under all through-strands on one side and over them on
    the other, so it has no self-crossings and links the closure
    ``sum(signs)`` times.
    """
    k = t.k
    uf = _UF()
    base = max([max(c.edges) for c in t.crossings] + list(t.left) + list(t.right)) + 1
    crossings = [(c.edges, c.sign) for c in t.crossings]
    nid = base
    mids = []
    for _ in range(k):
        mids.append(nid)
        nid += 1
    belt_a = list(range(nid, nid + k + 1))  # x1 column, index 0 = top turn, k = bottom turn
    nid += k + 1
    belt_b = [belt_a[0]] + list(range(nid, nid + k - 1)) + [belt_a[k]]
    nid += k - 1
    for i in range(k):  # i = 0 top strand
        eps = t.signs[i]
        r, l, m = t.right[i], t.left[i], mids[i]
        west_in = eps > 0
        # x1: belt runs north, under; strand horizontal, over.  ccw: E, N, W, S
        slots = [
            (m, not west_in, True),
            (belt_a[i], False, False),
            (r, west_in, True),
            (belt_a[i + 1], True, False),
        ]
        c1 = _geo_crossing(slots)
        # x2: belt runs south, over; strand under
        slots = [
            (l, not west_in, False),
            (belt_b[i], True, True),
            (m, west_in, False),
            (belt_b[i + 1], False, True),
        ]
        c2 = _geo_crossing(slots)
        crossings += [(c1.edges, c1.sign), (c2.edges, c2.sign)]
    names = {belt_a[0]: axis_label}
    knot_edges = [c.edges[0] for c in t.crossings] + list(t.left)
    for e in knot_edges:
        names[e] = factor_label
    for m in mids:
        names[m] = factor_label
    return _from_records(crossings, (), names)
