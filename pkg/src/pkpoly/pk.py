"""The coloring polynomial as a sum of chromatic polynomials over colorable states."""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from . import diagram as dg
from .diagram import DiagramError, LinkDiagram
from .polynomial import (
    ChromaticCache,
    FallingFactorialForm,
    IntPolynomial,
    chromatic,
    to_falling_factorial,
)
from .states import (
    ComponentGraph,
    State,
    TransitionSystem,
    check_budget,
    enumerate_colorable,
    norm,
)
from .surface import MatchedCubicGraph

DEFAULT_SKEIN_BUDGET = 14

_cache = ChromaticCache()


def as_diagram(x) -> LinkDiagram:
    if isinstance(x, LinkDiagram):
        return x
    if isinstance(x, MatchedCubicGraph):
        return dg.from_matched_graph(x)
    raise TypeError(f"expected LinkDiagram or MatchedCubicGraph, got {type(x).__name__}")


@dataclass(frozen=True)
class PKResult:
    polynomial: IntPolynomial
    colorable_state_count: int
    census: tuple[tuple[int, int], ...]  # (component count, number of colorable states)
    falling: FallingFactorialForm
    input_hash: str
    budget: int | None
    elapsed: float = field(compare=False)
    states: tuple[int, ...] = ()


def chromatic_of(cg: ComponentGraph) -> IntPolynomial:
    return chromatic(cg.vertex_count, cg.edges, _cache)


def pk_polynomial(x, budget: int | None = None, workers: int = 1, keep_states: bool = False) -> PKResult:
    d = as_diagram(x)
    ts = TransitionSystem.from_diagram(d)
    start = time.perf_counter()
    total = IntPolynomial(())
    census: dict[int, int] = {}
    masks = []
    count = 0
    for state, cg in enumerate_colorable(ts, budget, workers):
        total = total + chromatic_of(cg)
        census[cg.vertex_count] = census.get(cg.vertex_count, 0) + 1
        count += 1
        if keep_states:
            masks.append(state.mask)
    return PKResult(
        total,
        count,
        tuple(sorted(census.items())),
        to_falling_factorial(total),
        d.digest(),
        budget,
        time.perf_counter() - start,
        tuple(masks),
    )


def split_components(d: LinkDiagram) -> list[LinkDiagram]:
    """Connected pieces of a diagram; each free loop is its own piece."""
    n = d.crossing_count
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in d.arcs():
        ra, rb = find(a // 4), find(b // 4)
        if ra != rb:
            parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    pieces = []
    for members in groups.values():
        idx = {c: j for j, c in enumerate(members)}
        arc = []
        for c in members:
            for k in range(4):
                e = d.arc[4 * c + k]
                arc.append(4 * idx[e // 4] + e % 4)
        pieces.append(LinkDiagram(tuple(arc), tuple(d.over[c] for c in members), 0))
    pieces.extend(LinkDiagram((), (), 1) for _ in range(d.free_loops))
    return pieces


def pk_by_components(d: LinkDiagram, budget: int | None = None) -> IntPolynomial:
    """Product of the polynomials of the connected pieces."""
    out = IntPolynomial.constant(1)
    for piece in split_components(d):
        out = out * pk_polynomial(piece, budget).polynomial
    return out


# -- skein expansion -------------------------------------------------------------


def pk_via_skein_expansion(x, budget: int | None = None) -> IntPolynomial:
    """Signed sum over CROSS/KISS/NODE assignments of (-2)^#NODE q^#loops."""
    d = as_diagram(x)
    ts = TransitionSystem.from_diagram(d)
    n = ts.site_count
    check_budget(n, DEFAULT_SKEIN_BUDGET if budget is None else budget, "--budget-states")
    m = 4 * n
    parent = list(range(m))
    size = [1] * m
    history: list[tuple[int, int]] = []
    classes = [m]

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra == rb:
            return
        if size[ra] > size[rb]:
            ra, rb = rb, ra
        parent[ra] = rb
        size[rb] += size[ra]
        history.append((ra, rb))
        classes[0] -= 1

    def undo(mark):
        while len(history) > mark:
            ra, rb = history.pop()
            parent[ra] = ra
            size[rb] -= size[ra]
            classes[0] += 1

    for a, b in enumerate(ts.arc):
        if a < b:
            union(a, b)
    coeffs: dict[int, int] = {}

    def rec(s, weight):
        if s == n:
            c = classes[0] + ts.free_loops
            coeffs[c] = coeffs.get(c, 0) + weight
            return
        b = 4 * s
        for pairs, w in (
            (((b, b + 2), (b + 1, b + 3)), 1),
            (((b + 1, b + 2), (b + 3, b)), 1),
            (((b, b + 1), (b, b + 2), (b, b + 3)), -2),
        ):
            mark = len(history)
            for u, v in pairs:
                union(u, v)
            rec(s + 1, weight * w)
            undo(mark)

    rec(0, 1)
    top = max(coeffs) if coeffs else 0
    return IntPolynomial(tuple(coeffs.get(k, 0) for k in range(top + 1)))


# -- structure theorems --------------------------------------------------------------


def _require_plane_alternating(d: LinkDiagram):
    if not dg.is_plane(d):
        raise DiagramError("diagram must be plane")
    if not dg.is_alternating(d):
        raise DiagramError("diagram must be alternating")


@dataclass(frozen=True)
class FactorReport:
    r: int
    polynomial: IntPolynomial
    reduced_polynomial: IntPolynomial
    reduced: LinkDiagram
    holds: bool
    census_divisible: bool


def verify_factor_theorem(d: LinkDiagram, budget: int | None = None) -> FactorReport:
    _require_plane_alternating(d)
    if not d.is_connected():
        raise DiagramError("diagram must be connected")
    if not dg.is_semi_reduced(d):
        raise DiagramError("diagram must be semi-reduced")
    dbar, r = dg.collapse_parallel_classes(d)
    full = pk_polynomial(d, budget)
    bar = pk_polynomial(dbar, budget)
    holds = full.polynomial == bar.polynomial.scale(1 << r)
    divisible = all(cnt % (1 << r) == 0 for _, cnt in full.census)
    return FactorReport(r, full.polynomial, bar.polynomial, dbar, holds, divisible)


# -- analysis -----------------------------------------------------------------------


def _signs(p: IntPolynomial) -> str:
    return "".join("+" if c > 0 else "-" if c < 0 else "0" for c in reversed(p.coeffs))


def weakly_sign_alternating(p: IntPolynomial) -> bool:
    d = p.degree
    return all((-1) ** (d - k) * c >= 0 for k, c in enumerate(p.coeffs))


def sign_alternating(p: IntPolynomial) -> bool:
    """Nonzero, alternating coefficients from the top down to q, and no constant term."""
    if p.is_zero() or p.coeff(0) != 0:
        return False
    d = p.degree
    return all((-1) ** (d - k) * p.coeff(k) > 0 for k in range(1, d + 1))


@dataclass
class AnalysisReport:
    polynomial: IntPolynomial
    degree: int
    leading: int
    a1: int
    a1_even: bool
    signs: str
    e_table: tuple[int, ...]
    c_table: tuple[int, ...]
    evals: dict[str, int]
    flags: dict[str, bool]
    violations: list[str]
    context: dict[str, object] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "polynomial": self.polynomial.to_line(),
            "degree": self.degree,
            "leading": self.leading,
            "a1": self.a1,
            "a1_even": self.a1_even,
            "signs": self.signs,
            "e_table": list(self.e_table),
            "c_table": list(self.c_table),
            "evals": dict(self.evals),
            "flags": dict(self.flags),
            "violations": list(self.violations),
            "context": dict(self.context),
        }

    def to_text(self) -> str:
        lines = [
            self.polynomial.to_line(),
            f"degree: {self.degree}",
            f"leading: {self.leading}",
            f"a1: {self.a1}",
            f"a1_even: {str(self.a1_even).lower()}",
            f"signs: {self.signs}",
            "e_table: " + " ".join(map(str, self.e_table)),
            "c_table: " + " ".join(map(str, self.c_table)),
        ]
        for k, v in self.evals.items():
            lines.append(f"{k}: {v}")
        for k, v in self.context.items():
            lines.append(f"{k}: {str(v).lower() if isinstance(v, bool) else v}")
        for k, v in self.flags.items():
            lines.append(f"flag {k}: {str(v).lower()}")
        for v in self.violations:
            lines.append(f"violation: {v}")
        return "\n".join(lines) + "\n"


def diagram_context(d: LinkDiagram) -> dict[str, object]:
    ctx: dict[str, object] = {
        "crossings": d.crossing_count,
        "genus": dg.genus(d),
        "plane": dg.is_plane(d),
        "alternating": dg.is_alternating(d),
        "connected": d.is_connected(),
        "semi_reduced": dg.is_semi_reduced(d),
        "s0_norm": norm(TransitionSystem.from_diagram(d), 0),
    }
    if ctx["plane"] and ctx["alternating"] and ctx["connected"]:
        tp = dg.checkerboard(d)
        ctx["dual_tait_simple"] = tp.dual.is_simple()
        ctx["tait_eulerian"] = tp.tait.is_eulerian()
    return ctx


def analyze(p: IntPolynomial, context: dict | None = None) -> AnalysisReport:
    """Coefficient and evaluation data for ``p``; checks what the context's hypotheses promise."""
    ctx = dict(context or {})
    ff = to_falling_factorial(p)
    a1 = p.coeff(1)
    evals = {"P(-1)": p(-1), "P(-2)": p(-2), "P(3)": p(3)}
    flags = {
        "a1_nonzero": a1 != 0,
        "weakly_sign_alternating": weakly_sign_alternating(p),
        "sign_alternating": sign_alternating(p),
        "jaeger_consistent": (p(-2) == 0) == (p(3) == 0),
        "c_nonnegative": all(c >= 0 for c in ff.c),
    }
    flags["vanishing_a1"] = not p.is_zero() and a1 == 0
    flags["sign_pattern_broken"] = not flags["weakly_sign_alternating"]
    violations = []
    alt_plane = bool(ctx.get("plane") and ctx.get("alternating") and ctx.get("connected"))
    if alt_plane and ctx.get("semi_reduced"):
        if p.degree != ctx.get("s0_norm"):
            violations.append(f"degree {p.degree} differs from the all-smoothed component count {ctx.get('s0_norm')}")
        if ctx.get("dual_tait_simple") and p.leading != 1:
            violations.append("dual Tait graph is simple but the polynomial is not monic")
        if a1 % 2:
            violations.append(f"linear coefficient {a1} is odd")
    if alt_plane and ctx.get("tait_eulerian") and not flags["sign_alternating"]:
        violations.append("Tait graph is Eulerian but coefficients do not strictly alternate")
    if ctx.get("plane") and ctx.get("connected") and not flags["jaeger_consistent"]:
        violations.append("P(-2) and P(3) disagree on vanishing")
    if not flags["c_nonnegative"]:
        violations.append("a falling-factorial coefficient is negative")
    if "s0_norm" in ctx:
        ctx["degree_deficit"] = int(ctx["s0_norm"]) - p.degree if not p.is_zero() else None
    return AnalysisReport(
        p,
        p.degree,
        p.leading,
        a1,
        a1 % 2 == 0,
        _signs(p),
        ff.e,
        ff.c,
        evals,
        flags,
        violations,
        ctx,
    )


@dataclass(frozen=True)
class ChiralityReport:
    undotted: int
    dotted: int
    polynomial: IntPolynomial
    mirror_polynomial: IntPolynomial
    chiral: bool
    conclusive: bool


def chirality_report(d: LinkDiagram, budget: int | None = None) -> ChiralityReport:
    _require_plane_alternating(d)
    if not d.is_connected():
        raise DiagramError("diagram must be connected")
    if not dg.is_reduced(d):
        raise DiagramError("diagram must be reduced")
    if not dg.is_prime(d):
        raise DiagramError("diagram must be prime")
    tp = dg.checkerboard(d)
    p = pk_polynomial(d, budget).polynomial
    pm = pk_polynomial(dg.mirror(d), budget).polynomial
    chiral = tp.dual.vertex_count != tp.tait.vertex_count or p != pm
    return ChiralityReport(tp.dual.vertex_count, tp.tait.vertex_count, p, pm, chiral, chiral)


# -- three-colorable states and Klein-group map colorings ------------------------------


def three_coloring(cg: ComponentGraph) -> tuple[int, ...] | None:
    """A proper coloring of the component graph with colors 1..3, or None."""
    n = cg.vertex_count
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in cg.edges:
        adj[u].add(v)
        adj[v].add(u)
    color = [0] * n
    order = sorted(range(n), key=lambda v: -len(adj[v]))

    def rec(k):
        if k == n:
            return True
        v = order[k]
        for c in (1, 2, 3):
            if all(color[w] != c for w in adj[v]):
                color[v] = c
                if rec(k + 1):
                    return True
        color[v] = 0
        return False

    return tuple(color) if rec(0) else None


def _masks_by_cross_count(n: int):
    for k in range(n + 1):
        for sites in itertools.combinations(range(n), k):
            yield sum(1 << s for s in sites)


@dataclass(frozen=True)
class ThreeColoredState:
    state: State
    graph: ComponentGraph
    coloring: tuple[int, ...]


def three_colorable_state_search(x, budget: int | None = None) -> ThreeColoredState | None:
    """First colorable state whose component graph is 3-colorable, fewest crossings first."""
    from .states import _graph_from_labels, _labels

    d = as_diagram(x)
    ts = TransitionSystem.from_diagram(d)
    n = ts.site_count
    check_budget(n, budget)
    for mask in _masks_by_cross_count(n):
        lab, _ = _labels(ts.arc, n, mask)
        if any(lab[4 * i] == lab[4 * i + 1] for i in range(n)):
            continue
        cg = _graph_from_labels(lab, n, ts.free_loops)
        col = three_coloring(cg)
        if col is not None:
            return ThreeColoredState(State.from_mask(mask, n), cg, col)
    return None


class PathDependence(RuntimeError):
    pass


@dataclass(frozen=True)
class MapColoring:
    regions: tuple[int, ...]  # diagram face ids of the map regions (undotted faces)
    colors: tuple[int, ...]  # Klein elements 0..3 (xor group), one per region
    face_colors: tuple[int, ...]  # every face of the diagram
    adjacencies: tuple[tuple[int, int], ...]  # region pairs sharing a crossing


def _face_data(d: LinkDiagram):
    from . import surface

    fs = surface.faces(d.to_embedded())
    return fs


def map_four_coloring(d: LinkDiagram, state, coloring: tuple[int, ...], base_region: int | None = None) -> MapColoring:
    """Region colors from a 3-colored state: crossing an arc adds its component's color."""
    _require_plane_alternating(d)
    ts = TransitionSystem.from_diagram(d)
    n = ts.site_count
    mask = state.mask if isinstance(state, State) else state
    from .states import _labels

    lab, _ = _labels(ts.arc, n, mask)
    if any(lab[4 * i] == lab[4 * i + 1] for i in range(n)):
        raise DiagramError("state is not colorable")
    ids = sorted(set(lab))
    comp_color = {c: coloring[k] for k, c in enumerate(ids)}
    if any(v not in (1, 2, 3) for v in comp_color.values()):
        raise DiagramError("component colors must be the nontrivial Klein elements 1, 2, 3")
    end_of = {}
    for i in range(n):
        for k, dart in enumerate(d.ends(i)):
            end_of[dart] = 4 * i + k
    tp = dg.checkerboard(d)
    fs = _face_data(d)
    fo = fs.face_of
    # links: (face, face, xor)
    links: list[list[tuple[int, int]]] = [[] for _ in range(len(fs))]
    for x, y in d.arcs():
        c = comp_color[lab[end_of[x]]]
        links[fo[x]].append((fo[y], c))
        links[fo[y]].append((fo[x], c))
    for i in range(n):
        if not (mask >> i) & 1:
            e = d.ends(i)
            links[fo[e[1]]].append((fo[e[3]], 0))
            links[fo[e[3]]].append((fo[e[1]], 0))
    regions = tuple(f for f in range(len(fs)) if not tp.face_shade[f])
    base = regions[0] if base_region is None else base_region
    col = [-1] * len(fs)
    col[base] = 0
    queue = [base]
    while queue:
        f = queue.pop()
        for g, c in links[f]:
            want = col[f] ^ c
            if col[g] < 0:
                col[g] = want
                queue.append(g)
            elif col[g] != want:
                raise PathDependence(f"face {g} reached with colors {col[g]} and {want}")
    adj = set()
    for i in range(n):
        e = d.ends(i)
        a, b = fo[e[0]], fo[e[2]]
        adj.add((min(a, b), max(a, b)))
    return MapColoring(regions, tuple(col[f] for f in regions), tuple(col), tuple(sorted(adj)))


def is_proper_map_coloring(mc: MapColoring) -> bool:
    color = dict(zip(mc.regions, mc.colors))
    return all(color[a] != color[b] for a, b in mc.adjacencies)


def state_from_map_coloring(d: LinkDiagram, region_colors: dict[int, int]) -> tuple[State, tuple[int, ...]]:
    """Reverse translation for a map with three regions around every vertex."""
    _require_plane_alternating(d)
    tp = dg.checkerboard(d)
    fs = _face_data(d)
    fo = fs.face_of
    col = [-1] * len(fs)
    for f, c in region_colors.items():
        if tp.face_shade[f]:
            raise DiagramError(f"face {f} is not a map region")
        col[f] = c
    for f in range(len(fs)):
        if not tp.face_shade[f]:
            continue
        around = {col[fo[d.arc[x]]] for x in fs.faces[f]}
        if len(around) != 3 or -1 in around:
            raise DiagramError("reverse translation needs three differently colored regions around each vertex")
        (col[f],) = {0, 1, 2, 3} - around
    n = d.crossing_count
    mask = 0
    for i in range(n):
        e = d.ends(i)
        if col[fo[e[1]]] != col[fo[e[3]]]:
            mask |= 1 << i
    ts = TransitionSystem.from_diagram(d)
    from .states import _labels

    lab, _ = _labels(ts.arc, n, mask)
    end_of = {}
    for i in range(n):
        for k, dart in enumerate(d.ends(i)):
            end_of[dart] = 4 * i + k
    comp_color: dict[int, int] = {}
    for x, y in d.arcs():
        c = col[fo[x]] ^ col[fo[y]]
        cid = lab[end_of[x]]
        if comp_color.setdefault(cid, c) != c:
            raise PathDependence(f"component {cid} carries two colors")
    ids = sorted(set(lab))
    return State.from_mask(mask, n), tuple(comp_color[c] for c in ids)
