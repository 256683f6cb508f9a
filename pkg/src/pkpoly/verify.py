"""Invariant suites run over a corpus; each check yields a named pass/fail record."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Callable, Iterable, Iterator

from . import diagram as dg
from . import oracles, pk, polynomial as poly, states as st, surface
from .corpus import CorpusEntry
from .diagram import LinkDiagram
from .polynomial import IntPolynomial
from .surface import EmbeddedGraph, MatchedCubicGraph


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        tail = f"  {self.detail}" if self.detail else ""
        return f"{'PASS' if self.ok else 'FAIL'} {self.suite} {self.name}{tail}"


@dataclass(frozen=True)
class Budgets:
    states: int | None = None
    oracle: int | None = None
    workers: int = 1


def _diagrams(entries: Iterable[CorpusEntry]) -> Iterator[tuple[CorpusEntry, LinkDiagram]]:
    for e in entries:
        if e.kind != "graph":
            yield e, e.diagram()


def _graphs(entries: Iterable[CorpusEntry]) -> Iterator[tuple[CorpusEntry, EmbeddedGraph]]:
    for e in entries:
        if e.kind == "graph":
            yield e, e.load()


def _is_alt_plane(d: LinkDiagram) -> bool:
    return d.is_connected() and dg.is_plane(d) and dg.is_alternating(d)


def suite_corpus(entries, b: Budgets) -> Iterator[Check]:
    """Recorded expectations against recomputation."""
    for e, d in _diagrams(entries):
        exp = e.expected
        res = pk.pk_polynomial(d, b.states, b.workers)
        p = res.polynomial
        checks = {
            "polynomial": lambda: p.to_line(),
            "colorable": lambda: res.colorable_state_count,
            "P(3)": lambda: p(3),
            "a1": lambda: p.coeff(1),
            "s0_norm": lambda: st.norm(st.TransitionSystem.from_diagram(d), 0),
            "undotted": lambda: dg.checkerboard(d).dual.vertex_count,
            "dotted": lambda: dg.checkerboard(d).tait.vertex_count,
            "chiral": lambda: pk.chirality_report(d, b.states).chiral,
            "factor_r": lambda: pk.verify_factor_theorem(d, b.states).r,
            "edge3": lambda: oracles.edge3_coloring_count(dg.to_matched_graph(d).graph, b.oracle),
        }
        for key, want in exp.items():
            if key not in checks:
                continue
            got = checks[key]()
            yield Check("corpus", f"{e.name}:{key}", got == want, f"expected {want}, got {got}")
    for e, g in _graphs(entries):
        if "P(3)" in e.expected:
            got = oracles.aigner_penrose(g, b.states)(3)
            yield Check("corpus", f"{e.name}:P(3)", got == e.expected["P(3)"], f"got {got}")


def suite_oracle(entries, b: Budgets, max_sites: int = 10) -> Iterator[Check]:
    for e, d in _diagrams(entries):
        if d.free_loops or d.crossing_count > max_sites:
            continue
        gm = dg.to_matched_graph(d)
        p = pk.pk_polynomial(d, b.states, b.workers).polynomial
        for n in (1, 2, 3, 4):
            want = oracles.tait_coloring_count(gm, n, b.oracle)
            yield Check("oracle-equivalence", f"{e.name}:n={n}", p(n) == want, f"P({n})={p(n)} oracle={want}")


def _cubic_graphs(entries) -> Iterator[tuple[str, EmbeddedGraph]]:
    for e in entries:
        if e.kind == "graph" and "cubic" in e.tags:
            yield e.name, e.load()
        elif e.kind == "matched":
            yield e.name, e.load().graph
    for e in entries:
        if e.name == "graph-k4":
            yield "blow-up(graph-k4)", dg.blow_up(e.load()).graph


def suite_matching(entries, b: Budgets) -> Iterator[Check]:
    for name, g in _cubic_graphs(entries):
        edge3 = oracles.edge3_coloring_count(g, b.oracle)
        values = []
        for m in surface.perfect_matchings(g):
            gm = MatchedCubicGraph(g, m)
            values.append(pk.pk_polynomial(gm, b.states, b.workers).polynomial(3))
        ok = bool(values) and all(v == edge3 for v in values)
        yield Check("matching-independence", name, ok, f"{len(values)} matchings, P(3) values {sorted(set(values))}, edge3={edge3}")


def suite_maxima(entries, b: Budgets, max_sites: int = 16) -> Iterator[Check]:
    for e, d in _diagrams(entries):
        ts = st.TransitionSystem.from_diagram(d)
        if ts.site_count > max_sites:
            continue
        bad = [m for m in range(1 << ts.site_count) if st.is_colorable(ts, m) != st.is_local_max(ts, m)]
        yield Check("maxima", e.name, not bad, f"{len(bad)} disagreements over {1 << ts.site_count} states")


def suite_bound(entries, b: Budgets) -> Iterator[Check]:
    for e, d in _diagrams(entries):
        ts = st.TransitionSystem.from_diagram(d)
        if ts.site_count == 0:
            continue
        rep = st.colorable_count_bound_check(ts, b.states)
        ok = rep.count <= rep.bound
        if dg.is_plane(d) and d.is_connected():
            ok = ok and rep.equality == ("torus-right" in e.tags)
        yield Check("bound", e.name, ok, f"{rep.count} of bound {rep.bound}")


def suite_skein(entries, b: Budgets, max_sites: int = 10) -> Iterator[Check]:
    for e, d in _diagrams(entries):
        if d.crossing_count > max_sites:
            continue
        p = pk.pk_polynomial(d, b.states, b.workers).polynomial
        s = pk.pk_via_skein_expansion(d)
        yield Check("skein", e.name, p == s, f"state sum {p.to_line()} expansion {s.to_line()}")


def suite_aigner(entries, b: Budgets, max_edges: int = 10) -> Iterator[Check]:
    for e, g in _graphs(entries):
        if g.edge_count > max_edges or surface.genus(g) != 0:
            continue
        a = oracles.aigner_penrose(g, b.states)
        p = pk.pk_polynomial(dg.blow_up(g), b.states, b.workers).polynomial
        yield Check("aigner", f"{e.name}:polynomial", a == p, f"{a.to_line()} vs {p.to_line()}")
        for n in (1, 2, 3, 4):
            v = oracles.admissible_valuation_count(g, n, b.oracle)
            yield Check("aigner", f"{e.name}:n={n}", v == a(n), f"valuations {v}, value {a(n)}")


def identity_checks(p: IntPolynomial) -> list[tuple[str, bool]]:
    """Falling-factorial identities that every coloring polynomial satisfies."""
    ff = poly.to_falling_factorial(p)
    e, c = ff.e, ff.c
    out = [
        ("round-trip", poly.from_falling_factorial(ff) == p),
        ("coefficients-from-c", poly.coefficients_from_cm(ff) == p),
        ("c=m!e", all(c[m] == factorial(m) * e[m] for m in range(len(e)))),
        ("c>=0", all(x >= 0 for x in c)),
        ("a1-from-c", poly.linear_coefficient_from_cm(c) == p.coeff(1)),
        ("e-from-evaluations", all(poly.em_from_evaluations(p, m) == e[m] for m in range(len(e)))),
        ("P(-1)", p(-1) == sum((-1) ** m * c[m] for m in range(len(c)))),
        ("P(-2)", p(-2) == sum((-1) ** m * (m + 1) * c[m] for m in range(len(c)))),
        ("P(-n)", all(poly.eval_negative_identity(ff, n) == p(-n) for n in range(1, 5))),
        ("P(-n)-binomial", all(
            p(-n) == sum((-1) ** m * comb(n + m - 1, m) * c[m] for m in range(len(c))) for n in range(1, 5))),
    ]
    d = p.degree
    if d >= 1:
        out.append(("a_{d-1}", poly.penultimate_coefficient(e) == p.coeff(d - 1)))
    if d >= 2:
        out.append(("a_{d-2}", poly.antepenultimate_coefficient(e) == p.coeff(d - 2)))
    return out


def suite_identities(entries, b: Budgets) -> Iterator[Check]:
    for e, d in _diagrams(entries):
        p = pk.pk_polynomial(d, b.states, b.workers).polynomial
        for name, ok in identity_checks(p):
            yield Check("identities", f"{e.name}:{name}", ok)


def suite_laws(entries, b: Budgets) -> Iterator[Check]:
    for e, d in _diagrams(entries):
        p = pk.pk_polynomial(d, b.states, b.workers).polynomial
        s0 = st.norm(st.TransitionSystem.from_diagram(d), 0)
        if _is_alt_plane(d) and dg.is_semi_reduced(d):
            tp = dg.checkerboard(d)
            yield Check("laws", f"{e.name}:degree", p.degree == s0, f"degree {p.degree}, all-smoothed {s0}")
            if tp.dual.is_simple():
                yield Check("laws", f"{e.name}:monic", p.leading == 1, f"leading {p.leading}")
            yield Check("laws", f"{e.name}:a1-even", p.coeff(1) % 2 == 0, f"a1 = {p.coeff(1)}")
            if tp.tait.is_eulerian():
                yield Check("laws", f"{e.name}:sign-alternating", pk.sign_alternating(p), str(p))
        if "a1" in e.expected and not dg.is_alternating(d) and dg.is_plane(d):
            yield Check("laws", f"{e.name}:odd-a1", p.coeff(1) % 2 == 1, f"a1 = {p.coeff(1)}")
        if "s0_norm" in e.expected:
            yield Check("laws", f"{e.name}:degree-deficit", s0 - p.degree == 1, f"all-smoothed {s0}, degree {p.degree}")
        if dg.is_plane(d) and d.is_connected():
            yield Check("laws", f"{e.name}:jaeger", (p(-2) == 0) == (p(3) == 0), f"P(-2)={p(-2)} P(3)={p(3)}")


def suite_structure(entries, b: Budgets) -> Iterator[Check]:
    by_name = {e.name: e for e in entries}
    right = by_name.get("right-trefoil")
    left = by_name.get("left-trefoil")
    pairs = [(x, y) for x in (left, right) for y in (left, right) if x and y]
    for x, y in pairs:
        d1, d2 = x.diagram(), y.diagram()
        p1 = pk.pk_polynomial(d1, b.states).polynomial
        p2 = pk.pk_polynomial(d2, b.states).polynomial
        prod = p1 * p2
        want = {"a": IntPolynomial(()), "b": prod - prod.exact_divide_by_q(), "c": prod.exact_divide_by_q()}
        for form in "abc":
            for arc1 in (0, 5):
                s = dg.connected_sum(d1, arc1, d2, 0, form)
                got = pk.pk_polynomial(s, b.states).polynomial
                yield Check("structure", f"sum-{form}:{x.name}#{y.name}@{arc1}", got == want[form],
                            f"{got.to_line()} vs {want[form].to_line()}")
    for e, d in _diagrams(entries):
        if "factor_r" in e.expected or (_is_alt_plane(d) and dg.is_semi_reduced(d) and "sum" not in e.tags):
            rep = pk.verify_factor_theorem(d, b.states)
            ok = rep.holds and rep.census_divisible
            if "factor_r" in e.expected:
                ok = ok and rep.r == e.expected["factor_r"]
            yield Check("structure", f"factor:{e.name}", ok, f"r={rep.r}")
        if "flype" in e.tags:
            out = dg.apply_flype(d, e.expected["pivot"], e.expected["tangle"])
            p0 = pk.pk_polynomial(d, b.states).polynomial
            p1 = pk.pk_polynomial(out, b.states).polynomial
            back = dg.apply_flype(out, e.expected["pivot"], e.expected["tangle"])
            ok = p0 == p1 and not dg.diagrams_isomorphic(d, out) and dg.diagrams_isomorphic(d, back)
            yield Check("structure", f"flype:{e.name}", ok, f"{p0.to_line()} -> {p1.to_line()}")


def suite_search(entries, b: Budgets) -> Iterator[Check]:
    for e, d in _diagrams(entries):
        plane_sr = dg.is_plane(d) and d.is_connected() and dg.is_semi_reduced(d)
        if plane_sr:
            hit = pk.three_colorable_state_search(d, b.states)
            yield Check("search", f"{e.name}:found", hit is not None)
        if "snark" in e.tags:
            hit = pk.three_colorable_state_search(d, b.states)
            yield Check("search", f"{e.name}:none", hit is None)
        if _is_alt_plane(d) and dg.is_semi_reduced(d) and dg.find_undotted_bigons(d):
            cur = d
            ok = True
            steps = 0
            while dg.find_undotted_bigons(cur):
                nxt, _ = dg.remove_undotted_bigon(cur)
                if pk.pk_polynomial(nxt, b.states).polynomial(3) > 0 and pk.pk_polynomial(cur, b.states).polynomial(3) <= 0:
                    ok = False
                steps += 1
                cur = nxt
                if cur.crossing_count == 0 or not _is_alt_plane(cur):
                    break
            yield Check("search", f"{e.name}:bigon-monotone", ok, f"{steps} removals")


def suite_klein(entries, b: Budgets) -> Iterator[Check]:
    for e, g in _graphs(entries):
        if "cubic" not in e.tags:
            continue
        d = dg.medial(g)
        hit = pk.three_colorable_state_search(d, b.states)
        if hit is None:
            yield Check("klein", e.name, False, "no 3-colored state")
            continue
        try:
            mc = pk.map_four_coloring(d, hit.state, hit.coloring)
            proper = pk.is_proper_map_coloring(mc)
            state, cols = pk.state_from_map_coloring(d, dict(zip(mc.regions, mc.colors)))
            back = state == hit.state and cols == hit.coloring
        except pk.PathDependence as exc:
            yield Check("klein", e.name, False, str(exc))
            continue
        yield Check("klein", e.name, proper and back, f"regions {len(mc.regions)}, colors {mc.colors}")


def suite_gf2(entries, b: Budgets, max_sites: int = 12) -> Iterator[Check]:
    for e, d in _diagrams(entries):
        if not _is_alt_plane(d) or d.crossing_count > max_sites:
            continue
        tp = dg.checkerboard(d)
        ts = st.TransitionSystem.from_diagram(d)
        bad = 0
        for mask in range(1 << ts.site_count):
            kept = [i for i, s in enumerate(tp.dual.sites) if (mask >> s) & 1]
            if st.gf2_component_count(tp.dual, kept) != st.norm(ts, mask):
                bad += 1
        yield Check("gf2", e.name, bad == 0, f"{bad} disagreements")


SUITES: dict[str, Callable[..., Iterator[Check]]] = {
    "corpus": suite_corpus,
    "oracle-equivalence": suite_oracle,
    "matching-independence": suite_matching,
    "maxima": suite_maxima,
    "bound": suite_bound,
    "skein": suite_skein,
    "aigner": suite_aigner,
    "identities": suite_identities,
    "laws": suite_laws,
    "structure": suite_structure,
    "search": suite_search,
    "klein": suite_klein,
    "gf2": suite_gf2,
}


def run_suites(entries, names: Iterable[str] | None = None, budgets: Budgets | None = None) -> list[Check]:
    b = budgets or Budgets()
    chosen = list(SUITES) if names is None else list(names)
    out: list[Check] = []
    for name in chosen:
        if name not in SUITES:
            raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
        out.extend(SUITES[name](list(entries), b))
    return out
