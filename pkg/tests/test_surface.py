import random

import pytest
from hypothesis import given, settings, strategies as st

from pkpoly import corpus, surface
from pkpoly.surface import EmbeddedGraph, GraphError, MatchedCubicGraph, ParseError


def random_map(seed: int, darts: int) -> EmbeddedGraph:
    rng = random.Random(seed)
    ids = list(range(darts))
    rng.shuffle(ids)
    pairs = [(ids[i], ids[i + 1]) for i in range(0, darts, 2)]
    rng.shuffle(ids)
    cuts = sorted(rng.sample(range(1, darts), rng.randint(0, darts - 1)))
    cycles = [ids[a:b] for a, b in zip([0] + cuts, cuts + [darts])]
    return EmbeddedGraph.from_vertex_cycles(cycles, pairs)


@settings(max_examples=60)
@given(st.integers(0, 10**6), st.integers(1, 8))
def test_euler_characteristic_is_even_per_component(seed, half):
    g = random_map(seed, 2 * half)
    assert surface.validate(g)
    for gg in surface.component_genera(g):
        assert gg >= 0
    fs = surface.faces(g)
    assert sorted(d for f in fs.faces for d in f) == list(range(g.dart_count))


@settings(max_examples=60)
@given(st.integers(0, 10**6), st.integers(1, 8))
def test_rsg_round_trip(seed, half):
    g = random_map(seed, 2 * half)
    back, m = surface.parse_rsg(g.to_rsg())
    assert m is None
    assert back == g


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.integers(1, 7))
def test_reversal_keeps_genus(seed, half):
    g = random_map(seed, 2 * half)
    assert surface.component_genera(g.reversed()) == surface.component_genera(g)
    assert g.reversed().reversed() == g


def test_plane_corpus_graphs_have_genus_zero():
    for e in corpus.graph_entries():
        g = e.load()
        assert surface.genus(g) == 0, e.name
        assert g.vertex_count - g.edge_count + len(surface.faces(g)) == 2


def test_k4_face_structure():
    g = corpus.k4_graph()
    assert (g.vertex_count, g.edge_count, len(surface.faces(g))) == (4, 6, 4)
    assert all(len(f) == 3 for f in surface.faces(g).faces)


def test_petersen_is_toroidal():
    gm = corpus.petersen_torus()
    assert surface.genus(gm.graph) == 1
    assert len(gm.matching) == 5


def test_single_vertex_torus():
    # one vertex with rotation a b a' b' is the standard torus
    g = EmbeddedGraph.from_vertex_cycles([[0, 1, 2, 3]], [(0, 2), (1, 3)])
    assert surface.genus(g) == 1
    assert len(surface.faces(g)) == 1


def test_bridges():
    # two triangles joined by one edge
    pts = [(0, 0), (1, 0), (0, 1), (3, 0), (4, 0), (3, 1)]
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (1, 3)]
    g = EmbeddedGraph.from_coordinates(pts, edges)
    assert surface.bridges(g) == {(12, 13)}
    assert surface.bridges(corpus.k4_graph()) == set()


def test_validation_reports_problems():
    bad = EmbeddedGraph(4, (1, 0, 3, 3), (1, 0, 3, 2))
    rep = surface.validate(bad)
    assert not rep and rep.dart == 2
    with pytest.raises(GraphError):
        surface.faces(bad)
    with pytest.raises(GraphError):
        EmbeddedGraph.from_vertex_cycles([[0, 1]], [(0, 1), (1, 0)])


def test_disconnected_genus_raises():
    g = EmbeddedGraph.from_vertex_cycles([[0], [1], [2], [3]], [(0, 1), (2, 3)])
    with pytest.raises(GraphError):
        surface.genus(g)
    assert surface.component_genera(g) == [0, 0]


@pytest.mark.parametrize("g,count", [
    (corpus.theta_graph(), 3),
    (corpus.k4_graph(), 3),
    (corpus.prism_graph(), 4),
    (corpus.cube_graph(), 9),
])
def test_perfect_matching_counts(g, count):
    ms = surface.perfect_matchings(g)
    assert len(ms) == count
    for m in ms:
        MatchedCubicGraph(g, m)


def test_matched_graph_validation():
    g = corpus.k4_graph()
    with pytest.raises(GraphError):
        MatchedCubicGraph.create(g, [g.edges()[0]])
    m = surface.perfect_matchings(g)[0]
    gm = MatchedCubicGraph(g, m)
    back, mm = surface.parse_rsg(gm.to_rsg())
    assert back == g and mm == gm.matching
    assert len(gm.non_matching_edges()) == 4


def test_map_isomorphism_respects_orientation_and_marks():
    g = corpus.k4_graph()
    perm = list(range(g.dart_count))
    random.Random(3).shuffle(perm)
    pairing = [0] * g.dart_count
    rotation = [0] * g.dart_count
    for d in range(g.dart_count):
        pairing[perm[d]] = perm[g.edge_pairing[d]]
        rotation[perm[d]] = perm[g.rotation[d]]
    h = EmbeddedGraph(g.dart_count, tuple(pairing), tuple(rotation))
    phi = surface.map_isomorphism(g, h)
    assert phi is not None
    assert all(h.rotation[phi[d]] == phi[g.rotation[d]] for d in range(g.dart_count))
    ms = surface.perfect_matchings(g)
    m2 = frozenset(h.edge_key(perm[a]) for a, _ in ms[0])
    assert surface.map_isomorphism(g, h, ms[0], m2) is not None
    assert surface.map_isomorphism(corpus.prism_graph(), corpus.k4_graph()) is None


@pytest.mark.parametrize("text,line,col", [
    ("v 0 1\n", 1, 1),
    ("rsg 2\nv 0 x\n", 2, 5),
    ("rsg 2\nrsg 2\n", 2, 1),
    ("rsg 2\nv 0 1\ne 0\n", 3, 1),
    ("rsg 2\nq 1\n", 2, 1),
])
def test_rsg_parse_errors_carry_position(text, line, col):
    with pytest.raises(ParseError) as exc:
        surface.parse_rsg(text)
    assert (exc.value.line, exc.value.column) == (line, col)


def test_rsg_header_mismatch():
    with pytest.raises(ParseError):
        surface.parse_rsg("rsg 4\nv 0 1\ne 0 1\n")
    with pytest.raises(ParseError):
        surface.parse_rsg("")
