import random

import pytest
from hypothesis import given, settings, strategies as st

from pkpoly import corpus, states
from pkpoly.diagram import LinkDiagram
from pkpoly.states import BudgetExceeded, State, StateError, TransitionSystem


def random_diagram(seed, n):
    rng = random.Random(seed)
    ids = list(range(4 * n))
    rng.shuffle(ids)
    arc = [0] * (4 * n)
    for i in range(0, 4 * n, 2):
        arc[ids[i]], arc[ids[i + 1]] = ids[i + 1], ids[i]
    return LinkDiagram(tuple(arc), tuple(rng.randint(0, 1) for _ in range(n)))


def dart_components(d, mask):
    """Components traced on the diagram's own darts; returns (labels, graph edges, colorable)."""
    parent = list(range(4 * d.crossing_count))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def join(a, b):
        parent[find(a)] = find(b)

    for a, b in d.arcs():
        join(a, b)
    for i in range(d.crossing_count):
        e0, e1, e2, e3 = d.ends(i)
        if (mask >> i) & 1:
            join(e0, e2)
            join(e1, e3)
        else:
            join(e1, e2)
            join(e3, e0)
    edges = set()
    colorable = True
    for i in range(d.crossing_count):
        e0, e1, _, _ = d.ends(i)
        a, b = find(e0), find(e1)
        if a == b:
            colorable = False
        edges.add(frozenset((a, b)))
    return {find(x) for x in range(len(parent))}, edges, colorable


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 6))
def test_trace_matches_dart_level_tracing(seed, n):
    d = random_diagram(seed, n)
    ts = TransitionSystem.from_diagram(d)
    for mask in range(1 << n):
        comps, edges, colorable = dart_components(d, mask)
        assert states.norm(ts, mask) == len(comps)
        assert states.is_colorable(ts, mask) == colorable
        if colorable:
            cg = states.component_graph(ts, mask)
            assert cg.vertex_count == len(comps)
            assert len(cg.edges) == len(edges)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6), st.integers(10, 11))
def test_parallel_enumeration_equals_serial(seed, n):
    ts = TransitionSystem.from_diagram(random_diagram(seed, n))
    serial = list(states.enumerate_colorable(ts, workers=1))
    parallel = list(states.enumerate_colorable(ts, workers=3))
    assert serial == parallel


def test_state_masks():
    s = State.from_mask(0b101, 4)
    assert s.choices == (1, 0, 1, 0) and s.mask == 5
    assert states.smoothing_distance(s, State.from_mask(0, 4)) == 2
    with pytest.raises(StateError):
        State((0, 2))
    with pytest.raises(StateError):
        states.smoothing_distance(s, State.from_mask(0, 3))


def test_mask_validation():
    ts = TransitionSystem.from_diagram(corpus.get("right-trefoil").diagram())
    with pytest.raises(StateError):
        states.norm(ts, 1 << 3)
    with pytest.raises(StateError):
        states.norm(ts, State.from_mask(0, 2))


def test_right_trefoil_states():
    ts = TransitionSystem.from_diagram(corpus.get("right-trefoil").diagram())
    found = list(states.enumerate_colorable(ts))
    assert len(found) == 4
    # the all-smoothed state of the (2,3) diagram: two circles kissing three times
    assert states.norm(ts, 0) == 2
    assert states.component_graph(ts, 0).edges == ((0, 1),)


def test_free_loops_are_isolated_components():
    d = LinkDiagram((), (), 2)
    ts = TransitionSystem.from_diagram(d)
    (state, cg), = states.enumerate_colorable(ts)
    assert cg.vertex_count == 2 and cg.edges == ()
    assert states.norm(ts, 0) == 2


def test_budget_is_enforced():
    ts = TransitionSystem.from_diagram(corpus.get("flype-1").diagram())
    with pytest.raises(BudgetExceeded) as exc:
        list(states.enumerate_colorable(ts, budget=6))
    assert exc.value.flag == "--budget-states"
    assert "--budget-states" in str(exc.value)


def test_bound_report():
    ts = TransitionSystem.from_diagram(corpus.get("torus-2-5").diagram())
    rep = states.colorable_count_bound_check(ts)
    assert (rep.count, rep.bound, rep.equality) == (16, 16, True)
    with pytest.raises(StateError):
        states.colorable_count_bound_check(TransitionSystem.from_diagram(LinkDiagram((), (), 1)))


@given(st.lists(st.integers(0, 2**6 - 1), max_size=8))
def test_gf2_rank_against_gaussian_elimination(rows):
    # independent rank: size of the span
    span = {0}
    for r in rows:
        span |= {x ^ r for x in span}
    assert 2 ** states.gf2_rank(list(rows)) == len(span)


def test_component_graph_dot():
    ts = TransitionSystem.from_diagram(corpus.get("borromean").diagram())
    dot = states.component_graph(ts, 0).to_dot("S")
    assert dot.startswith("graph S {") and "--" in dot
