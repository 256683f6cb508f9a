"""One test per acceptance criterion; each records a PASS/FAIL line for the terminal summary."""

import io

import pytest

from conftest import record
from pkpoly import cli, corpus, diagram as dg, oracles, pk, states as st, surface
from pkpoly.polynomial import IntPolynomial, chromatic
from pkpoly.surface import MatchedCubicGraph
from pkpoly.verify import identity_checks


def P(name):
    return pk.pk_polynomial(corpus.get(name).diagram())


def poly(*c):
    return IntPolynomial(c)


def _plane_alt(d):
    return d.is_connected() and dg.is_plane(d) and dg.is_alternating(d)


def _settle(number, title, checks):
    for label, ok, detail in checks:
        record(number, title, ok, f"{label}: {detail}")
    bad = [f"{label}: {detail}" for label, ok, detail in checks if not ok]
    assert not bad, bad


def test_criterion_01_recorded_values():
    k3 = chromatic(3, [(0, 1), (1, 2), (0, 2)])
    k4 = chromatic(4, [(a, b) for a in range(4) for b in range(a + 1, 4)])
    cases = [
        ("left trefoil", P("left-trefoil"), poly(0, 2, -3, 1), None),
        ("right trefoil", P("right-trefoil"), poly(0, -4, 4), 4),
        ("cube torus", P("cube-torus"), poly(0, 2) * poly(-1, 1) * poly(-1, 1), 2),
        ("vbrings", P("virtual-borromean"), poly(0, 0, -1, 1), 3),
        ("nonaltex", P("nonalternating-odd"), poly(0, 5, -8, 3), None),
        ("cexample", P("degree-deficit"), poly(0, -1, 1), 1),
        ("borromean", P("borromean"), k3 + k4, None),
    ]
    checks = []
    for label, res, want, count in cases:
        ok = res.polynomial == want and (count is None or res.colorable_state_count == count)
        checks.append((label, ok, f"{res.polynomial} with {res.colorable_state_count} states"))
    checks.append(("P(3) right", P("right-trefoil").polynomial(3) == 24, str(P("right-trefoil").polynomial(3))))
    checks.append(("P(3) left", P("left-trefoil").polynomial(3) == 6, str(P("left-trefoil").polynomial(3))))
    _settle(1, "recorded polynomial values", checks)


def test_criterion_02_oracle_equivalence():
    checks = []
    for e in corpus.diagram_entries():
        d = e.diagram()
        if d.free_loops or d.crossing_count > 10:
            continue
        gm = dg.to_matched_graph(d)
        p = pk.pk_polynomial(d).polynomial
        vals = [(p(n), oracles.tait_coloring_count(gm, n)) for n in (1, 2, 3, 4)]
        checks.append((e.name, all(a == b for a, b in vals), str(vals)))
    checks.append(("instance count", len(checks) >= 12, str(len(checks))))
    _settle(2, "state sum equals brute-force Tait counts, n = 1..4", checks)


def _cubic_cases():
    yield "theta", corpus.theta_graph(), 3
    yield "k4", corpus.k4_graph(), 3
    yield "prism", corpus.prism_graph(), 4
    yield "cube", corpus.cube_graph(), 9
    yield "petersen", corpus.petersen_torus().graph, 6
    yield "k4 blow-up", dg.blow_up(corpus.k4_graph()).graph, None


def test_criterion_03_matching_independence():
    checks = []
    for label, g, n_match in _cubic_cases():
        ms = surface.perfect_matchings(g)
        values = {pk.pk_polynomial(MatchedCubicGraph(g, m)).polynomial(3) for m in ms}
        edge3 = oracles.edge3_coloring_count(g)
        ok = values == {edge3} and (n_match is None or len(ms) == n_match)
        checks.append((label, ok, f"{len(ms)} matchings, P(3) {sorted(values)}, edge3 {edge3}"))
    _settle(3, "P(3) is matching independent and counts edge 3-colorings", checks)


def test_criterion_04_petersen():
    gm = corpus.petersen_torus()
    p3 = pk.pk_polynomial(gm).polynomial(3)
    e3 = oracles.edge3_coloring_count(gm.graph)
    _settle(4, "Petersen snark", [
        ("genus", surface.genus(gm.graph) == 1, str(surface.genus(gm.graph))),
        ("P(3)", p3 == 0, str(p3)),
        ("edge3", e3 == 0, str(e3)),
    ])


def test_criterion_05_maxima():
    checks = []
    for e in corpus.diagram_entries():
        ts = st.TransitionSystem.from_diagram(e.diagram())
        if ts.site_count > 16:
            continue
        bad = sum(st.is_colorable(ts, m) != st.is_local_max(ts, m) for m in range(1 << ts.site_count))
        checks.append((e.name, bad == 0, f"{bad} of {1 << ts.site_count} states disagree"))
    _settle(5, "colorable iff strict local maximum", checks)


def test_criterion_06_bound():
    checks = []
    for e in corpus.diagram_entries():
        ts = st.TransitionSystem.from_diagram(e.diagram())
        if ts.site_count == 0:
            continue
        rep = st.colorable_count_bound_check(ts)
        torus = e.name.startswith("torus-2-")
        ok = rep.count <= rep.bound and (rep.equality if torus else True)
        if not torus and "torus-right" not in e.tags:
            ok = ok and not rep.equality
        checks.append((e.name, ok, f"{rep.count} of {rep.bound}"))
    torus_names = {f"torus-2-{n}" for n in range(2, 7)}
    checks.append(("torus entries", torus_names <= set(corpus.names()), "present"))
    _settle(6, "colorable-state bound and its equality cases", checks)


def test_criterion_07_structure():
    checks = []
    trefoils = [corpus.get(n).diagram() for n in ("left-trefoil", "right-trefoil")]
    for d1 in trefoils:
        for d2 in trefoils:
            prod = pk.pk_polynomial(d1).polynomial * pk.pk_polynomial(d2).polynomial
            want = {"a": IntPolynomial(), "b": prod - prod.exact_divide_by_q(), "c": prod.exact_divide_by_q()}
            for form in "abc":
                for arc in (0, 5):
                    s = dg.connected_sum(d1, arc, d2, 0, form)
                    form_seen = {f for f, _, _ in dg.prime_report(s).decompositions}
                    got = pk.pk_polynomial(s).polynomial
                    checks.append((f"sum ({form}) at dart {arc}", got == want[form] and form in form_seen,
                                   f"{got} vs {want[form]}"))
    for name, r in (("right-trefoil", 2), ("torus-2-4", 3)):
        rep = pk.verify_factor_theorem(corpus.get(name).diagram())
        checks.append((f"factor {name}", rep.holds and rep.r == r, f"r={rep.r}"))
    flypes = [e for e in corpus.diagram_entries() if "flype" in e.tags]
    for e in flypes:
        d = e.diagram()
        out = dg.apply_flype(d, e.expected["pivot"], e.expected["tangle"])
        same = pk.pk_polynomial(d).polynomial == pk.pk_polynomial(out).polynomial
        checks.append((f"flype {e.name}", same and not dg.diagrams_isomorphic(d, out), "polynomial kept"))
    checks.append(("flype count", len(flypes) >= 3, str(len(flypes))))
    _settle(7, "connected sums, factor theorem, flypes", checks)


def _law_entries():
    for e in corpus.diagram_entries():
        d = e.diagram()
        yield e, d, pk.pk_polynomial(d).polynomial


def test_criterion_08_coefficient_laws():
    checks = []
    for e, d, p in _law_entries():
        s0 = st.norm(st.TransitionSystem.from_diagram(d), 0)
        if _plane_alt(d) and dg.is_semi_reduced(d):
            tp = dg.checkerboard(d)
            checks.append((f"{e.name} degree", p.degree == s0, f"{p.degree} vs {s0}"))
            if tp.dual.is_simple():
                checks.append((f"{e.name} monic", p.leading == 1, str(p.leading)))
        if _plane_alt(d) and dg.checkerboard(d).tait.is_eulerian():
            checks.append((f"{e.name} signs", pk.sign_alternating(p), str(p)))
    p = P("nonalternating-odd").polynomial
    checks.append(("nonaltex a1", p.coeff(1) == 5, str(p.coeff(1))))
    d = corpus.get("degree-deficit").diagram()
    s0 = st.norm(st.TransitionSystem.from_diagram(d), 0)
    p = pk.pk_polynomial(d).polynomial
    checks.append(("cexample deficit", s0 - p.degree == 1, f"{s0} - {p.degree}"))
    _settle(8, "coefficient laws for alternating plane diagrams", checks)


@pytest.mark.xfail(strict=True, reason="theta-1 has a1 = -1; see the decisions ledger")
def test_criterion_08_a1_even():
    checks = []
    for e, d, p in _law_entries():
        if _plane_alt(d) and dg.is_semi_reduced(d):
            checks.append((f"{e.name} a1", p.coeff(1) % 2 == 0, f"a1 = {p.coeff(1)}"))
    _settle(8, "coefficient laws for alternating plane diagrams", checks)


def test_criterion_09_identities():
    checks = []
    polys = [(e.name, pk.pk_polynomial(e.diagram()).polynomial) for e in corpus.diagram_entries()]
    polys += [(e.name, oracles.aigner_penrose(e.load())) for e in corpus.graph_entries()]
    for name, p in polys:
        for label, ok in identity_checks(p):
            checks.append((f"{name} {label}", ok, str(p)))
    _settle(9, "falling-factorial identities on every corpus polynomial", checks)


def test_criterion_10_aigner():
    checks = []
    graphs = [e for e in corpus.graph_entries() if e.load().edge_count <= 10]
    for e in graphs:
        g = e.load()
        a = oracles.aigner_penrose(g)
        p = pk.pk_polynomial(dg.blow_up(g)).polynomial
        checks.append((f"{e.name} polynomial", a == p, f"{a} vs {p}"))
        vals = [(a(n), oracles.admissible_valuation_count(g, n)) for n in range(1, 5)]
        checks.append((f"{e.name} valuations", all(x == y for x, y in vals), str(vals)))
    checks.append(("graph count", len(graphs) >= 6, str(len(graphs))))
    for name in ("graph-theta", "graph-k4"):
        v = oracles.aigner_penrose(corpus.get(name).load())(3)
        checks.append((f"{name} value at 3", v == 6, str(v)))
    _settle(10, "subset-sum walk polynomial equals the state sum", checks)


def test_criterion_11_skein():
    checks = []
    for e in corpus.diagram_entries():
        d = e.diagram()
        if d.crossing_count > 10:
            continue
        a, b = pk.pk_via_skein_expansion(d), pk.pk_polynomial(d).polynomial
        checks.append((e.name, a == b, f"{a} vs {b}"))
    _settle(11, "three-term expansion equals the state sum", checks)


def test_criterion_12_search_and_bigons():
    checks = []
    for e in corpus.diagram_entries():
        d = e.diagram()
        if dg.is_plane(d) and d.is_connected() and dg.is_semi_reduced(d):
            hit = pk.three_colorable_state_search(d)
            checks.append((f"{e.name} search", hit is not None, "found" if hit else "none"))
        if _plane_alt(d):
            cur = d
            _, _, steps = dg.reduce_all_bigons(d)
            for k, step in enumerate(steps):
                before = pk.pk_polynomial(cur).polynomial(3)
                after = pk.pk_polynomial(step.diagram).polynomial(3)
                checks.append((f"{e.name} step {k} ({step.kind})", not (after > 0) or before > 0,
                               f"P(3) {before} -> {after}"))
                cur = step.diagram
    hit = pk.three_colorable_state_search(corpus.petersen_torus())
    checks.append(("petersen search", hit is None, "none" if hit is None else "found"))
    _settle(12, "3-colorable state search and bigon monotonicity", checks)


def test_criterion_13_klein():
    checks = []
    maps = [e for e in corpus.graph_entries() if "cubic" in e.tags]
    for e in maps:
        d = dg.medial(e.load())
        hit = pk.three_colorable_state_search(d)
        mc = pk.map_four_coloring(d, hit.state, hit.coloring)
        others = [pk.map_four_coloring(d, hit.state, hit.coloring, r) for r in mc.regions[1:]]
        # another base region only relabels the colors by a fixed Klein element
        shifts = all(len({a ^ b for a, b in zip(mc.colors, o.colors)}) == 1 for o in others)
        state, cols = pk.state_from_map_coloring(d, dict(zip(mc.regions, mc.colors)))
        ok = pk.is_proper_map_coloring(mc) and shifts and state == hit.state and cols == hit.coloring
        checks.append((e.name, ok, f"{len(mc.regions)} regions"))
    checks.append(("map count", len(maps) >= 2, str(len(maps))))
    _settle(13, "Klein-group map colorings", checks)


def _compute(name, threads):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(["compute", "--threads", str(threads), f"corpus:{name}"], out, err)
    return code, out.getvalue()


def test_criterion_14_determinism():
    checks = []
    for e in corpus.entries():
        one = _compute(e.name, 1)
        many = _compute(e.name, 4)
        checks.append((e.name, one == many and one[0] == 0, f"{len(one[1])} bytes"))
    _settle(14, "compute output independent of worker count", checks)
