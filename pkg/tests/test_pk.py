import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from pkpoly import corpus, diagram as dg, oracles, pk, surface
from pkpoly.diagram import DiagramError, LinkDiagram
from pkpoly.polynomial import IntPolynomial
from pkpoly.states import BudgetExceeded


def random_diagram(seed, n):
    rng = random.Random(seed)
    ids = list(range(4 * n))
    rng.shuffle(ids)
    arc = [0] * (4 * n)
    for i in range(0, 4 * n, 2):
        arc[ids[i]], arc[ids[i + 1]] = ids[i + 1], ids[i]
    return LinkDiagram(tuple(arc), tuple(rng.randint(0, 1) for _ in range(n)))


def naive_tait_count(gm, n):
    """Plain product over all colorings of the non-matching edges."""
    g = gm.graph
    free = gm.non_matching_edges()
    idx = {e: i for i, e in enumerate(free)}
    cons = []
    for a, b in gm.matching_edges():
        ends = []
        for x in (a, b):
            r = g.rotation[x]
            ends.append((idx[g.edge_key(r)], idx[g.edge_key(g.rotation[r])]))
        cons.append(ends)
    total = 0
    for col in itertools.product(range(n), repeat=len(free)):
        ok = True
        for (p, q), (r, s) in cons:
            if col[p] == col[q] or {col[p], col[q]} != {col[r], col[s]}:
                ok = False
                break
        total += ok
    return total


def naive_edge3(g):
    edges = g.edges()
    vof = g.vertex_of()
    count = 0
    for col in itertools.product(range(3), repeat=len(edges)):
        seen = {}
        ok = True
        for (a, b), c in zip(edges, col):
            for v in (vof[a], vof[b]):
                if c in seen.setdefault(v, set()):
                    ok = False
                seen[v].add(c)
        count += ok
    return count


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_state_sum_counts_tait_colorings(seed, n):
    d = random_diagram(seed, n)
    gm = dg.to_matched_graph(d)
    p = pk.pk_polynomial(d).polynomial
    for k in range(1, 4):
        assert p(k) == naive_tait_count(gm, k) == oracles.tait_coloring_count(gm, k)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 6))
def test_skein_expansion_equals_state_sum(seed, n):
    d = random_diagram(seed, n)
    assert pk.pk_via_skein_expansion(d) == pk.pk_polynomial(d).polynomial


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 5))
def test_normalization_keeps_the_polynomial(seed, n):
    d = random_diagram(seed, n)
    assert pk.pk_polynomial(d.normalized()).polynomial == pk.pk_polynomial(d).polynomial


@pytest.mark.parametrize("name", ["graph-theta", "graph-k4", "graph-prism", "graph-cube"])
def test_edge3_oracle_against_naive_product(name):
    g = corpus.get(name).load()
    if g.edge_count > 12:
        pytest.skip("naive product too large")
    assert oracles.edge3_coloring_count(g) == naive_edge3(g)


def test_edge3_known_values():
    assert oracles.edge3_coloring_count(corpus.k4_graph()) == 6
    assert oracles.edge3_coloring_count(corpus.petersen_torus().graph) == 0
    with pytest.raises(surface.GraphError):
        oracles.edge3_coloring_count(corpus.cycle_graph(3))


def test_oracle_budget():
    gm = corpus.petersen_torus()
    with pytest.raises(BudgetExceeded) as exc:
        oracles.tait_coloring_count(gm, 4, budget=50)
    assert exc.value.flag == "--budget-oracle"


def test_left_right_walks_of_a_cycle():
    # with nothing crossed the walks are the face boundaries
    g = corpus.cycle_graph(3)
    assert oracles.left_right_walk_count(g, set()) == 2
    assert oracles.aigner_penrose(g) == pk.pk_polynomial(dg.blow_up(g)).polynomial


def test_disjoint_union_is_a_product():
    right = corpus.get("right-trefoil").diagram()
    left = corpus.get("left-trefoil").diagram()
    u = dg.disjoint_union(right, left)
    want = pk.pk_polynomial(right).polynomial * pk.pk_polynomial(left).polynomial
    assert pk.pk_polynomial(u).polynomial == want
    assert pk.pk_by_components(u) == want
    assert len(pk.split_components(u)) == 2
    loops = LinkDiagram((), (), 2)
    assert pk.pk_polynomial(loops).polynomial == IntPolynomial((0, 0, 1))


def test_result_metadata():
    res = pk.pk_polynomial(corpus.get("right-trefoil").diagram(), keep_states=True)
    assert res.colorable_state_count == 4 == len(res.states)
    assert res.census == ((2, 4),)
    assert res.falling.e == (0, 0, 4)
    assert len(res.input_hash) == 16


def test_factor_report_preconditions():
    with pytest.raises(DiagramError):
        pk.verify_factor_theorem(corpus.get("nonalternating-odd").diagram())
    with pytest.raises(DiagramError):
        pk.verify_factor_theorem(corpus.get("sum-a").diagram())
    rep = pk.verify_factor_theorem(corpus.get("torus-2-6").diagram())
    assert rep.r == 5 and rep.holds and rep.census_divisible
    assert rep.reduced_polynomial == IntPolynomial((0, -1, 1))


def test_sign_predicates():
    assert pk.sign_alternating(IntPolynomial((0, 2, -3, 1)))
    assert not pk.sign_alternating(IntPolynomial((0, 0, -1, 1)))
    assert pk.weakly_sign_alternating(IntPolynomial((0, 0, -1, 1)))
    assert not pk.weakly_sign_alternating(IntPolynomial((0, 1, 1)))
    assert not pk.sign_alternating(IntPolynomial())


def test_analysis_report():
    d = corpus.get("nonalternating-odd").diagram()
    p = pk.pk_polynomial(d).polynomial
    rep = pk.analyze(p, pk.diagram_context(d))
    assert rep.a1 == 5 and not rep.a1_even
    assert rep.violations == []  # no alternating hypothesis to violate
    assert rep.evals["P(3)"] == p(3)
    js = rep.to_json()
    assert js["polynomial"] == "poly 0 5 -8 3" and js["signs"] == "+-+0"
    assert "a1: 5" in rep.to_text()
    vb = corpus.get("virtual-borromean").diagram()
    assert pk.analyze(pk.pk_polynomial(vb).polynomial).flags["vanishing_a1"]


def test_analysis_flags_odd_a1_under_alternating_hypotheses():
    d = corpus.get("theta-1").diagram()
    rep = pk.analyze(pk.pk_polynomial(d).polynomial, pk.diagram_context(d))
    assert any("odd" in v for v in rep.violations)


def test_chirality():
    rep = pk.chirality_report(corpus.get("link-8-1-3").diagram())
    assert (rep.undotted, rep.dotted, rep.chiral) == (3, 7, True)
    fig8 = pk.chirality_report(corpus.get("figure-eight").diagram())
    assert not fig8.chiral and fig8.polynomial == fig8.mirror_polynomial
    with pytest.raises(DiagramError):
        pk.chirality_report(corpus.get("sum-c").diagram())


def test_three_coloring_helper():
    from pkpoly.states import ComponentGraph
    k4 = ComponentGraph((0, 1, 2, 3), tuple(itertools.combinations(range(4), 2)))
    assert pk.three_coloring(k4) is None
    c5 = ComponentGraph(tuple(range(5)), tuple((i, (i + 1) % 5) for i in range(5)))
    col = pk.three_coloring(c5)
    assert all(col[u] != col[v] for u, v in c5.edges)


def test_search_budget():
    with pytest.raises(BudgetExceeded):
        pk.three_colorable_state_search(corpus.get("flype-1").diagram(), budget=3)


def test_map_coloring_rejects_bad_input():
    d = dg.medial(corpus.k4_graph())
    hit = pk.three_colorable_state_search(d)
    with pytest.raises(DiagramError):
        pk.map_four_coloring(d, hit.state, tuple(0 for _ in hit.coloring))
    from pkpoly.states import TransitionSystem, is_colorable
    ts = TransitionSystem.from_diagram(d)
    bad = next(m for m in range(1 << ts.site_count) if not is_colorable(ts, m))
    with pytest.raises(DiagramError):
        pk.map_four_coloring(d, bad, hit.coloring)
    with pytest.raises(DiagramError):
        pk.map_four_coloring(corpus.get("nonalternating-odd").diagram(), 0, (1, 2))
