import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperdisc.builder import build_example19, build_three
from hyperdisc.errors import IndexOutOfRange, InvalidHypergraph, ParseError
from hyperdisc.hypergraph import (
    Color,
    Hypergraph,
    atom_differences,
    atomize,
    discrepancy_from_atoms,
    discrepancy_of_coloring,
    edge_imbalance,
    read_hypergraph,
    write_hypergraph,
)

R, B = Color.RED, Color.BLUE


@st.composite
def hypergraphs(draw, max_vertices=20, max_edges=8):
    V = draw(st.integers(0, max_vertices))
    edges = draw(st.lists(st.sets(st.integers(0, V - 1)) if V else st.just(set()), max_size=max_edges))
    return Hypergraph.from_sets(V, edges)


def signatures_by_scan(h):
    """Edge-membership signature of each vertex, straight from the edge lists."""
    return [tuple(k for k, e in enumerate(h.edges) if v in e) for v in range(h.num_vertices)]


def test_rejects_bad_edges():
    with pytest.raises(InvalidHypergraph):
        Hypergraph(3, ((0, 3),))
    with pytest.raises(InvalidHypergraph):
        Hypergraph(3, ((1, 0),))


def test_atomize_distinct_memberships():
    a = atomize(Hypergraph(4, ((0, 1), (1, 2))))
    assert a.atom_sizes == (1, 1, 1, 1)
    assert a.vertices == ((0,), (1,), (2,), (3,))
    assert a.edge_atoms == ((0, 1), (1, 2))


def test_atomize_single_edge():
    a = atomize(Hypergraph(3, ((0, 1, 2),)))
    assert a.atom_sizes == (3,)


def test_atomize_example19_matches_scan():
    h, _ = build_example19(20)
    a = atomize(h)
    sigs = signatures_by_scan(h)
    assert len(set(sigs)) == a.num_atoms == 12
    for verts in a.vertices:
        assert len({sigs[v] for v in verts}) == 1
    # B1 is split by C (which also holds the |t| = 7 fresh vertices)
    assert sorted(a.atom_sizes) == sorted([5, 5, 5, 1, 7] + [1] * 7)


@given(hypergraphs())
def test_atom_invariants(h):
    a = atomize(h)
    assert sum(a.atom_sizes) == h.num_vertices
    sigs = signatures_by_scan(h)
    assert len(set(sigs)) == a.num_atoms
    assert a.edge_sizes() == h.edge_sizes()
    for verts in a.vertices:
        assert len({sigs[v] for v in verts}) == 1


def test_atomize_exactness_random_colorings():
    rng = random.Random(11)
    for _ in range(40):
        V = rng.randint(1, 20)
        h = Hypergraph.from_sets(V, [rng.sample(range(V), rng.randint(0, V)) for _ in range(rng.randint(0, 6))])
        a = atomize(h)
        for _ in range(200):
            c = [rng.choice((R, B)) for _ in range(V)]
            assert discrepancy_of_coloring(h, c) == discrepancy_from_atoms(a, atom_differences(a, c))


def test_atomize_invariant_under_relabeling_within_atom():
    h, _ = build_three(6)
    a = atomize(h)
    # swap two vertices of the first atom: edges are unchanged as sets
    x, y = a.vertices[0][:2]
    perm = {x: y, y: x}
    h2 = Hypergraph.from_sets(h.num_vertices, [[perm.get(v, v) for v in e] for e in h.edges])
    a2 = atomize(h2)
    assert (a2.atom_sizes, a2.edge_atoms) == (a.atom_sizes, a.edge_atoms)


def test_edge_imbalance():
    h = Hypergraph(4, ((0, 1), (0, 1, 2), (0, 1, 2, 3)))
    assert edge_imbalance(h, [R, B, R, B], 0) == 0
    assert edge_imbalance(h, [R, R, R, B], 2) == 2
    with pytest.raises(IndexOutOfRange):
        edge_imbalance(h, [R] * 4, 3)
    with pytest.raises(InvalidHypergraph):
        edge_imbalance(h, [R] * 3, 0)


@given(hypergraphs(max_vertices=12), st.randoms())
def test_imbalance_parity(h, rnd):
    c = [rnd.choice((R, B)) for _ in range(h.num_vertices)]
    for k, e in enumerate(h.edges):
        assert (edge_imbalance(h, c, k) - len(e)) % 2 == 0


def test_discrepancy_of_coloring():
    assert discrepancy_of_coloring(Hypergraph(2, ()), [R, B]) == 0
    assert discrepancy_of_coloring(Hypergraph(3, ((0, 1), (1, 2), (0, 2))), [R, B, R]) == 2
    assert discrepancy_of_coloring(Hypergraph(3, ((0, 1, 2),)), [R, R, R]) == 3


def test_write_exact_bytes():
    assert write_hypergraph(Hypergraph(3, ((0, 1), (1, 2)))) == "HG 3 2\n0 1\n1 2\n"
    assert read_hypergraph("HG 0 0\n") == Hypergraph(0, ())


def test_empty_edge_round_trip():
    h = Hypergraph(2, ((), (0, 1)))
    assert read_hypergraph(write_hypergraph(h)) == h


@settings(max_examples=100)
@given(hypergraphs())
def test_round_trip(h):
    text = write_hypergraph(h)
    assert read_hypergraph(text) == h
    assert write_hypergraph(read_hypergraph(text)) == text


@pytest.mark.parametrize(
    "text, line",
    [
        ("HG 3 1\n0 1", 2),
        ("HX 3 1\n0 1\n", 1),
        ("HG 3 2\n0 1\n", 3),
        ("HG 3 1\n0 7\n", 2),
        ("HG 3 1\n1 0\n", 2),
        ("HG 3 2\n0 1\nx y\n", 3),
        ("HG 3 1\n0  1\n", 2),
    ],
)
def test_parse_errors_name_line(text, line):
    with pytest.raises(ParseError) as exc:
        read_hypergraph(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)
