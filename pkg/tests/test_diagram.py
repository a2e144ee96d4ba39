from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import figure_eight, left_trefoil, trefoil
from knotslopes.alexander import alexander_from_diagram, torus_alexander
from knotslopes.diagram import (
    AnnularTangle,
    BraidWord,
    Crossing,
    PlanarDiagram,
    annular_closure,
    axis_link,
    braid_closure,
    connected_sum,
    diagram_predicates,
    disjoint_union,
    linking_number,
    mirror,
    sublink,
    tangle_power,
)
from knotslopes.errors import DomainError
from knotslopes.formats import parse_pd

words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=0, max_size=10)


@given(words)
def test_braid_closure_counts(word):
    b = BraidWord(4, tuple(word))
    d = braid_closure(b)
    assert d.crossing_count == len(word)
    assert d.component_count == b.cycle_count()
    assert d.writhe == sum(1 if w > 0 else -1 for w in word)


@given(words)
def test_faces_satisfy_euler(word):
    d = braid_closure(BraidWord(4, tuple(word)))
    if d.crossing_count == 0:
        return
    parts = diagram_predicates(d).nonsplit
    faces = d.faces()
    # every corner of every crossing appears in exactly one face
    corners = sorted(c for f in faces for c in f)
    assert corners == sorted((x, i) for x in range(d.crossing_count) for i in range(4))
    if parts:
        assert len(faces) == d.crossing_count + 2


@given(words)
def test_mirror_is_an_involution(word):
    d = braid_closure(BraidWord(4, tuple(word)))
    m = mirror(d)
    assert m.writhe == -d.writhe
    assert mirror(m) == d


@given(words)
def test_pd_text_round_trip(word):
    d = braid_closure(BraidWord(4, tuple(word)))
    assert parse_pd(str(d)) == d


def test_mirror_braid_equals_mirror_diagram():
    b = BraidWord(3, (1, -2, 1, 1, 2))
    inv = BraidWord(3, tuple(-x for x in b.letters))
    assert mirror(braid_closure(b)).canonical_code() == braid_closure(inv).canonical_code()


@pytest.mark.parametrize("k", [1, 2, 3])
def test_linking_number_of_two_strand_closure(k):
    d = braid_closure(BraidWord(2, (1,) * (2 * k)))
    a, b = d.labels
    assert linking_number(d, a, b) == k
    assert linking_number(mirror(d), a, b) == -k


def test_sublink_drops_components():
    d = braid_closure(BraidWord(3, (1, 1, -2, 1, 1, -2, -2)))
    kept = sublink(d, [d.labels[0]])
    assert kept.component_count == 1
    assert alexander_from_diagram(kept) == torus_alexander(3, 2)


def test_predicates_of_trefoil():
    p = diagram_predicates(trefoil())
    assert (p.alternating, p.reduced, p.positive, p.negative) == (True, True, True, False)
    assert (p.nonsplit, p.prime_diagram) == (True, True)
    assert diagram_predicates(left_trefoil()).negative


def test_figure_eight_is_alternating_and_not_special():
    p = diagram_predicates(figure_eight())
    assert p.alternating and p.reduced and not p.positive and not p.negative


@pytest.mark.parametrize(
    "word,strands",
    [((1, -1), 2), ((1, 2), 3), ((1, 1, 1, 2), 3)],
)
def test_nonreduced_examples(word, strands):
    assert not diagram_predicates(braid_closure(BraidWord(strands, word))).reduced


def test_disjoint_union_is_split():
    d = disjoint_union(trefoil(), figure_eight())
    p = diagram_predicates(d)
    assert not p.nonsplit
    assert d.component_count == 2


def test_connected_sum_is_composite_diagram():
    d = connected_sum(trefoil(), trefoil())
    p = diagram_predicates(d)
    assert p.nonsplit and not p.prime_diagram
    assert d.crossing_count == 6


def test_connected_sum_with_unknot_is_identity():
    u = parse_pd("loop 1")
    assert connected_sum(trefoil(), u).canonical_code() == trefoil().canonical_code()


def test_crossing_validation():
    with pytest.raises(DomainError):
        Crossing((1, 2, 3, 4), 0)
    with pytest.raises(DomainError):
        parse_pd("X(1,2,3,4)+\n")


def test_component_labels_from_text():
    d = parse_pd("X(1,3,2,4)+ X(3,1,4,2)+\ncomponent A: 1\ncomponent B: 3\n")
    assert set(d.labels) == {"A", "B"}
    assert linking_number(d, "A", "B") in (1, -1)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_tangle_from_braid_closes_to_braid_closure(n):
    b = BraidWord(n, tuple(range(1, n)) * 2)
    t = AnnularTangle.from_braid(b)
    assert t.k == n
    closed, lk = annular_closure(t)
    assert lk == n
    assert closed.canonical_code() == braid_closure(b).canonical_code()


@pytest.mark.parametrize("p", [1, 2, 3, 5])
def test_tangle_power_is_braid_power(p):
    b = BraidWord(2, (1, 1, 1))
    t = tangle_power(AnnularTangle.from_braid(b), p)
    assert t.crossing_count == 3 * p
    closed, lk = annular_closure(t)
    assert closed.canonical_code() == braid_closure(b.power(p)).canonical_code()


def test_knot_arc_tangle_power_is_repeated_sum():
    t = AnnularTangle.from_knot_arc(trefoil())
    assert t.k == 1 and t.axis_linking == 1
    closed, _ = annular_closure(tangle_power(t, 2))
    assert alexander_from_diagram(closed) == alexander_from_diagram(connected_sum(trefoil(), trefoil()))


def test_axis_link_has_unknotted_axis():
    t = AnnularTangle.from_braid(BraidWord(2, (1, 1, 1)))
    d = axis_link(t)
    assert d.labels == ("K", "C")
    assert linking_number(d, "K", "C") == 2
    assert alexander_from_diagram(sublink(d, ["K"])) == torus_alexander(3, 2)
    assert alexander_from_diagram(sublink(d, ["C"])) == 1


def test_planar_diagram_rejects_nonplanar_data():
    # a virtual trefoil-like record set that cannot be drawn in the plane
    with pytest.raises(DomainError):
        parse_pd("X(1,3,2,4)+ X(2,4,3,1)+\n")


def test_unknot_diagram():
    u = parse_pd("loop 1")
    assert u.is_knot() and u.crossing_count == 0
    assert isinstance(u, PlanarDiagram)


def _component_count_oracle(records):
    # brute force: edges a,c lie on one strand and so do b,d
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b, c, d in records:
        parent[find(a)] = find(c)
        parent[find(b)] = find(d)
    return len({find(e) for r in records for e in r})


@given(words)
def test_component_count_matches_brute_force(word):
    d = braid_closure(BraidWord(4, tuple(word)))
    if d.crossing_count == 0:
        return
    records = [c.edges for c in d.crossings]
    assert _component_count_oracle(records) == d.component_count - len(d.free_loops())
