"""Link diagrams in orientable surfaces and their surgeries.

Crossing ``i`` owns darts ``4i .. 4i+3`` listed counterclockwise. ``over[i]``
is 0 when the over-arc is the diagonal (4i, 4i+2) and 1 when it is
(4i+1, 4i+3). Arcs of the diagram pair darts along the strands.

Throughout, a crossing is read in its *normalised* frame ``e0..e3``: the
darts rotated so that the over-arc is ``e0-e2``. In that frame the dots sit
in the corners (e0, e1) and (e2, e3), the dot-smoothing (KISS) joins
``e1-e2`` and ``e3-e0`` and the crossing itself (CROSS) joins ``e0-e2`` and
``e1-e3``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import surface
from .surface import EmbeddedGraph, GraphError, MatchedCubicGraph, ParseError

KISS = 0
CROSS = 1


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class Crossing:
    """Four dart ids counterclockwise plus the over diagonal ("02" or "13")."""

    darts: tuple[int, int, int, int]
    over_strand: str = "02"

    def __post_init__(self):
        if len(set(self.darts)) != 4:
            raise DiagramError(f"crossing darts {self.darts} are not distinct")
        if self.over_strand not in ("02", "13"):
            raise DiagramError(f"over strand must be '02' or '13', not {self.over_strand!r}")


@dataclass(frozen=True)
class LinkDiagram:
    arc: tuple[int, ...]
    over: tuple[int, ...]
    free_loops: int = 0

    def __post_init__(self):
        object.__setattr__(self, "arc", tuple(self.arc))
        object.__setattr__(self, "over", tuple(int(o) for o in self.over))
        n = len(self.over)
        if len(self.arc) != 4 * n:
            raise DiagramError(f"{n} crossings need {4 * n} darts, got {len(self.arc)}")
        for d, e in enumerate(self.arc):
            if not 0 <= e < 4 * n:
                raise DiagramError(f"arc partner of dart {d} out of range")
            if e == d:
                raise DiagramError(f"dart {d} is paired with itself")
            if self.arc[e] != d:
                raise DiagramError(f"arc pairing is not an involution at dart {d}")
        if any(o not in (0, 1) for o in self.over):
            raise DiagramError("over flags must be 0 or 1")
        if self.free_loops < 0:
            raise DiagramError("free_loops must be nonnegative")

    @classmethod
    def from_crossings(cls, crossings: Sequence[Crossing], arcs: Iterable[tuple[int, int]], free_loops: int = 0) -> "LinkDiagram":
        """Build from arbitrary dart ids; darts are relabelled densely."""
        relabel = {}
        over = []
        for i, c in enumerate(crossings):
            for k, d in enumerate(c.darts):
                if d in relabel:
                    raise DiagramError(f"dart {d} used by two crossings")
                relabel[d] = 4 * i + k
            over.append(0 if c.over_strand == "02" else 1)
        arc = [-1] * (4 * len(crossings))
        for a, b in arcs:
            for d in (a, b):
                if d not in relabel:
                    raise DiagramError(f"arc endpoint {d} is not a crossing dart")
                if arc[relabel[d]] != -1:
                    raise DiagramError(f"dart {d} lies on two arcs")
            arc[relabel[a]] = relabel[b]
            arc[relabel[b]] = relabel[a]
        if -1 in arc:
            raise DiagramError("some crossing dart lies on no arc")
        return cls(tuple(arc), tuple(over), free_loops)

    @property
    def crossing_count(self) -> int:
        return len(self.over)

    @property
    def crossings(self) -> list[Crossing]:
        return [
            Crossing((4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3), "02" if o == 0 else "13")
            for i, o in enumerate(self.over)
        ]

    def ends(self, i: int) -> tuple[int, int, int, int]:
        """Darts of crossing ``i`` in the normalised frame (over-arc e0-e2)."""
        o = self.over[i]
        return tuple(4 * i + (k + o) % 4 for k in range(4))

    def arcs(self) -> list[tuple[int, int]]:
        return [(d, e) for d, e in enumerate(self.arc) if d < e]

    def to_embedded(self) -> EmbeddedGraph:
        """The induced 4-valent map (free loops are not represented)."""
        n = self.crossing_count
        rotation = [4 * (d // 4) + (d % 4 + 1) % 4 for d in range(4 * n)]
        return EmbeddedGraph(4 * n, self.arc, tuple(rotation))

    def normalized(self) -> "LinkDiagram":
        """Relabel darts so every over flag is 0."""
        perm = [0] * (4 * self.crossing_count)
        for i in range(self.crossing_count):
            for k, d in enumerate(self.ends(i)):
                perm[d] = 4 * i + k
        arc = [0] * len(perm)
        for d, e in enumerate(self.arc):
            arc[perm[d]] = perm[e]
        return LinkDiagram(tuple(arc), (0,) * self.crossing_count, self.free_loops)

    def to_lkd(self) -> str:
        lines = [f"lkd {self.crossing_count} {self.free_loops}"]
        for c in self.crossings:
            lines.append("x " + " ".join(map(str, c.darts)) + " " + c.over_strand)
        for a, b in self.arcs():
            lines.append(f"a {a} {b}")
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_lkd().encode()).hexdigest()[:16]

    def is_connected(self) -> bool:
        if self.crossing_count == 0:
            return self.free_loops <= 1
        if self.free_loops:
            return False
        return surface.connected_components(self.to_embedded())[0] == 1


def parse_lkd(text: str) -> LinkDiagram:
    header = None
    crossings = []
    arcs = []
    for lineno, toks in surface._tokens(text):
        kind, col = toks[0]
        if kind == "lkd":
            if header is not None:
                raise ParseError("duplicate header", lineno, col)
            args = surface._ints(lineno, toks[1:])
            if len(args) != 2 or min(args) < 0:
                raise ParseError("header must be 'lkd <crossing_count> <free_loops>'", lineno, col)
            header = args
        elif header is None:
            raise ParseError("missing 'lkd' header", lineno, col)
        elif kind == "x":
            if len(toks) != 6:
                raise ParseError("crossing line is 'x d0 d1 d2 d3 o'", lineno, col)
            darts = surface._ints(lineno, toks[1:5])
            o, ocol = toks[5]
            if o not in ("02", "13"):
                raise ParseError(f"over diagonal must be 02 or 13, got {o!r}", lineno, ocol)
            try:
                crossings.append(Crossing(tuple(darts), o))
            except DiagramError as exc:
                raise ParseError(str(exc), lineno, col) from None
        elif kind == "a":
            args = surface._ints(lineno, toks[1:])
            if len(args) != 2:
                raise ParseError("arc line needs two darts", lineno, col)
            arcs.append(tuple(args))
        else:
            raise ParseError(f"unknown record {kind!r}", lineno, col)
    if header is None:
        raise ParseError("empty input: missing 'lkd' header")
    if len(crossings) != header[0]:
        raise ParseError(f"header announces {header[0]} crossings, found {len(crossings)}")
    try:
        return LinkDiagram.from_crossings(crossings, arcs, header[1])
    except DiagramError as exc:
        raise ParseError(str(exc)) from None


def parse_diagram(text: str) -> LinkDiagram:
    """LKD text, or RSG text with matching lines (converted through from_matched_graph)."""
    for lineno, toks in surface._tokens(text):
        if toks[0][0] == "rsg":
            g, matching = surface.parse_rsg(text)
            if matching is None:
                raise ParseError("RSG input needs 'm' lines to define a diagram", lineno, toks[0][1])
            try:
                return from_matched_graph(MatchedCubicGraph(g, matching))
            except GraphError as exc:
                raise ParseError(str(exc)) from None
        break
    return parse_lkd(text)


# -- conversion to and from matched cubic graphs ------------------------------


def from_matched_graph(gm: MatchedCubicGraph) -> LinkDiagram:
    """One crossing per matching edge, the parallel reconnection being the dot-smoothing."""
    g = gm.graph
    rot = g.rotation
    relabel = {}
    for i, (a, b) in enumerate(gm.matching_edges()):
        a1 = rot[a]
        a2 = rot[a1]
        b1 = rot[b]
        b2 = rot[b1]
        for k, d in enumerate((a1, a2, b1, b2)):
            relabel[d] = 4 * i + k
    n = len(gm.matching)
    arc = [0] * (4 * n)
    for x, y in gm.non_matching_edges():
        arc[relabel[x]] = relabel[y]
        arc[relabel[y]] = relabel[x]
    return LinkDiagram(tuple(arc), (0,) * n, 0)


def to_matched_graph(d: LinkDiagram) -> MatchedCubicGraph:
    if d.free_loops:
        raise DiagramError("a diagram with free loops has no cubic-graph preimage")
    return _matched_graph(d)


def _matched_graph(d: LinkDiagram) -> MatchedCubicGraph:
    n = d.crossing_count
    cycles = []
    edges = list(d.arcs())
    matching = []
    for i in range(n):
        e0, e1, e2, e3 = d.ends(i)
        a, b = 4 * n + 2 * i, 4 * n + 2 * i + 1
        cycles.append((a, e0, e1))
        cycles.append((b, e2, e3))
        edges.append((a, b))
        matching.append((a, b))
    g = EmbeddedGraph.from_vertex_cycles(cycles, edges) if n else EmbeddedGraph(0, (), ())
    return MatchedCubicGraph.create(g, matching)


def diagrams_isomorphic(d1: LinkDiagram, d2: LinkDiagram) -> bool:
    """Isomorphism of connected diagrams, preserving orientation and crossing data."""
    if d1.crossing_count != d2.crossing_count or d1.free_loops != d2.free_loops:
        return False
    if d1.crossing_count == 0:
        return True
    g1, g2 = _matched_graph(d1), _matched_graph(d2)
    return surface.map_isomorphism(g1.graph, g2.graph, g1.matching, g2.matching) is not None


# -- structure -----------------------------------------------------------------


def genus(d: LinkDiagram) -> int:
    if d.crossing_count == 0:
        return 0
    return surface.genus(d.to_embedded())


def is_plane(d: LinkDiagram) -> bool:
    if d.crossing_count == 0:
        return True
    return all(g == 0 for g in surface.component_genera(d.to_embedded()))


def strand_walks(d: LinkDiagram) -> list[list[tuple[int, int]]]:
    """Link components as cyclic lists of (entry dart, exit dart) passages."""
    seen = set()
    walks = []
    for start in range(4 * d.crossing_count):
        if start in seen:
            continue
        walk = []
        x = start
        while x not in seen:
            y = 4 * (x // 4) + (x % 4 + 2) % 4
            seen.add(x)
            seen.add(y)
            walk.append((x, y))
            x = d.arc[y]
        walks.append(walk)
    return walks


def _is_over(d: LinkDiagram, dart: int) -> bool:
    return dart % 2 == d.over[dart // 4]


def is_alternating(d: LinkDiagram) -> bool:
    for walk in strand_walks(d):
        kinds = [_is_over(d, x) for x, _ in walk]
        for i in range(len(kinds)):
            if kinds[i] == kinds[(i + 1) % len(kinds)]:
                return False
    return True


def writhe(d: LinkDiagram) -> int:
    """Sum of crossing signs with each component oriented along its walk."""
    exits = {}
    for walk in strand_walks(d):
        for x, y in walk:
            exits[x] = y
    total = 0
    for i in range(d.crossing_count):
        e = d.ends(i)
        over_exit = e[2] if e[0] in exits else e[0]
        under_exit = e[3] if e[1] in exits else e[1]
        j = e.index(over_exit)
        total += 1 if e[(j + 1) % 4] == under_exit else -1
    return total


def link_component_count(d: LinkDiagram) -> int:
    return len(strand_walks(d)) + d.free_loops


@dataclass(frozen=True)
class Multigraph:
    """Abstract multigraph; ``edges[i]`` is the edge contributed by crossing ``sites[i]``."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    sites: tuple[int, ...] = ()
    labels: tuple[int, ...] = ()

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            if u == v:
                return False
            key = (min(u, v), max(u, v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def is_eulerian(self) -> bool:
        return all(x % 2 == 0 for x in self.degrees())

    def parallel_classes(self) -> list[list[int]]:
        """Edge indices grouped by unordered endpoint pair, in first-seen order."""
        groups: dict[tuple[int, int], list[int]] = {}
        for i, (u, v) in enumerate(self.edges):
            groups.setdefault((min(u, v), max(u, v)), []).append(i)
        return list(groups.values())

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in range(self.vertex_count):
            lines.append(f"  {v};")
        for i, (u, v) in enumerate(self.edges):
            label = f' [label="{self.sites[i]}"]' if self.sites else ""
            lines.append(f"  {u} -- {v}{label};")
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class TaitGraphPair:
    tait: Multigraph
    dual: Multigraph
    face_shade: tuple[bool, ...] = field(repr=False)
    face_count: int = 0


def checkerboard(d: LinkDiagram, require_connected: bool = True) -> TaitGraphPair:
    """Shade the dotted faces; return the Tait graph (dotted) and dual Tait graph (undotted)."""
    if require_connected and not d.is_connected():
        raise DiagramError("checkerboard needs a connected diagram")
    if not is_plane(d):
        raise DiagramError("checkerboard needs a plane diagram")
    if not is_alternating(d):
        raise DiagramError("checkerboard needs an alternating diagram")
    n = d.crossing_count
    if n == 0:
        empty = Multigraph(0, ())
        return TaitGraphPair(empty, empty, (), 0)
    fs = surface.faces(d.to_embedded())
    fo = fs.face_of
    shade: list[bool | None] = [None] * len(fs)
    for i in range(n):
        e0, e1, e2, e3 = d.ends(i)
        for dart, dotted in ((e1, True), (e3, True), (e2, False), (e0, False)):
            f = fo[dart]
            if shade[f] is None:
                shade[f] = dotted
            elif shade[f] != dotted:
                raise DiagramError(f"inconsistent shading at face {f} (crossing {i})")
    dotted_faces = [f for f in range(len(fs)) if shade[f]]
    undotted_faces = [f for f in range(len(fs)) if not shade[f]]
    di = {f: i for i, f in enumerate(dotted_faces)}
    ui = {f: i for i, f in enumerate(undotted_faces)}
    t_edges = []
    u_edges = []
    for i in range(n):
        e0, e1, e2, e3 = d.ends(i)
        t_edges.append((di[fo[e1]], di[fo[e3]]))
        u_edges.append((ui[fo[e2]], ui[fo[e0]]))
    sites = tuple(range(n))
    tait = Multigraph(len(dotted_faces), tuple(t_edges), sites, tuple(dotted_faces))
    dual = Multigraph(len(undotted_faces), tuple(u_edges), sites, tuple(undotted_faces))
    return TaitGraphPair(tait, dual, tuple(bool(s) for s in shade), len(fs))


def nugatory_crossings(d: LinkDiagram) -> list[int]:
    """Crossings with two diagonally opposite corners on one face."""
    if d.crossing_count == 0:
        return []
    fo = surface.faces(d.to_embedded()).face_of
    out = []
    for i in range(d.crossing_count):
        e0, e1, e2, e3 = (4 * i + k for k in range(4))
        if fo[e1] == fo[e3] or fo[e0] == fo[e2]:
            out.append(i)
    return out


def is_semi_reduced(d: LinkDiagram) -> bool:
    if d.crossing_count == 0:
        return True
    return not surface.bridges(_matched_graph(d).graph)


def is_reduced(d: LinkDiagram) -> bool:
    return not nugatory_crossings(d)


def two_arc_cuts(d: LinkDiagram) -> list[tuple[tuple[int, int], tuple[int, int], frozenset[int]]]:
    """Pairs of arcs whose removal splits the crossings into two nonempty sides.

    Each result is (arc1, arc2, crossings on the side containing the
    smaller-indexed crossing of the split).
    """
    n = d.crossing_count
    arcs = d.arcs()
    out = []
    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            cut = {arcs[i], arcs[j]}
            parent = list(range(n))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for a, b in arcs:
                if (a, b) in cut:
                    continue
                ra, rb = find(a // 4), find(b // 4)
                if ra != rb:
                    parent[ra] = rb
            roots = {find(x) for x in range(n)}
            if len(roots) == 2:
                side = frozenset(x for x in range(n) if find(x) == find(0))
                out.append((arcs[i], arcs[j], side))
    return out


@dataclass(frozen=True)
class PrimeReport:
    connected: bool
    prime: bool
    decompositions: tuple[tuple[str, tuple[int, int], tuple[int, int]], ...] = ()


def prime_report(d: LinkDiagram) -> PrimeReport:
    """Classify nontrivial 2-arc cuts as connected-sum forms (a), (b) or (c)."""
    connected = d.is_connected()
    if not connected:
        return PrimeReport(False, False, ())
    bridges = surface.bridges(_matched_graph(d).graph) if d.crossing_count else set()
    nug = set(nugatory_crossings(d))
    n = d.crossing_count
    mg_match = {}
    for i in range(n):
        mg_match[i] = (4 * n + 2 * i, 4 * n + 2 * i + 1)
    found = []
    for a1, a2, side in two_arc_cuts(d):
        # a side of exactly one crossing is a kink: its box is a single arc
        if len(side) < 1 or n - len(side) < 1:
            continue
        if len(side) == 1 or n - len(side) == 1:
            continue
        ends1 = {a1[0] // 4, a1[1] // 4}
        ends2 = {a2[0] // 4, a2[1] // 4}
        shared = (ends1 & ends2) & nug
        form = "c"
        for x in shared:
            form = "a" if mg_match[x] in bridges else "b"
        found.append((form, a1, a2))
    return PrimeReport(True, not found, tuple(found))


def is_prime(d: LinkDiagram) -> bool:
    return prime_report(d).prime


# -- surgeries --------------------------------------------------------------------


def mirror(d: LinkDiagram) -> LinkDiagram:
    return LinkDiagram(d.arc, tuple(1 - o for o in d.over), d.free_loops)


def disjoint_union(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    shift = 4 * d1.crossing_count
    arc = d1.arc + tuple(e + shift for e in d2.arc)
    return LinkDiagram(arc, d1.over + d2.over, d1.free_loops + d2.free_loops)


def smooth_sites(d: LinkDiagram, choices: dict[int, int]) -> LinkDiagram:
    """Remove the given crossings, replacing each by its KISS or CROSS reconnection.

    Closed curves that no longer meet a crossing become free loops.
    """
    removed = {}
    for i, kind in choices.items():
        e0, e1, e2, e3 = d.ends(i)
        if kind == KISS:
            pairs = ((e1, e2), (e3, e0))
        elif kind == CROSS:
            pairs = ((e0, e2), (e1, e3))
        else:
            raise DiagramError(f"unknown smoothing {kind!r}")
        for a, b in pairs:
            removed[a] = b
            removed[b] = a
    keep = [i for i in range(d.crossing_count) if i not in choices]
    newidx = {i: j for j, i in enumerate(keep)}

    def relabel(x):
        return 4 * newidx[x // 4] + x % 4

    arc = [0] * (4 * len(keep))
    visited = set()
    for i in keep:
        for x in range(4 * i, 4 * i + 4):
            y = d.arc[x]
            while y in removed:
                visited.add(y)
                z = removed[y]
                visited.add(z)
                y = d.arc[z]
            arc[relabel(x)] = relabel(y)
    loops = 0
    for x in removed:
        if x in visited:
            continue
        loops += 1
        y = x
        while True:
            visited.add(y)
            z = removed[y]
            visited.add(z)
            y = d.arc[z]
            if y == x:
                break
    return LinkDiagram(tuple(arc), tuple(d.over[i] for i in keep), d.free_loops + loops)


def _attach_arc(arc: list[int], a: int, b: int):
    arc[a] = b
    arc[b] = a


def connected_sum(d1: LinkDiagram, arc1: int, d2: LinkDiagram, arc2: int, form: str = "c") -> LinkDiagram:
    """Cut the arc through dart ``arc1`` of d1 and ``arc2`` of d2 and join them.

    Form "c" reconnects the cut ends directly; forms "b" and "a" join them
    through a new crossing whose dot-smoothing respectively separates or
    joins the two summands.
    """
    if form not in ("a", "b", "c"):
        raise DiagramError(f"unknown connected-sum form {form!r}")
    n1, n2 = d1.crossing_count, d2.crossing_count
    if not 0 <= arc1 < 4 * n1:
        raise DiagramError(f"arc reference {arc1} invalid for first diagram")
    if not 0 <= arc2 < 4 * n2:
        raise DiagramError(f"arc reference {arc2} invalid for second diagram")
    base = disjoint_union(d1, d2)
    shift = 4 * n1
    p, pp = arc1, d1.arc[arc1]
    r, rr = arc2 + shift, d2.arc[arc2] + shift
    target = (genus(d1) if n1 else 0) + (genus(d2) if n2 else 0)
    candidates = []
    for (x, xx) in ((p, pp), (pp, p)):
        for (y, yy) in ((r, rr), (rr, r)):
            arc = list(base.arc)
            over = list(base.over)
            if form == "c":
                _attach_arc(arc, x, y)
                _attach_arc(arc, xx, yy)
            else:
                X = 4 * (n1 + n2)
                arc.extend([0, 0, 0, 0])
                over.append(0)
                if form == "b":
                    slots = ((x, X + 3), (xx, X + 0), (y, X + 1), (yy, X + 2))
                else:
                    slots = ((x, X + 0), (xx, X + 1), (y, X + 2), (yy, X + 3))
                for a, b in slots:
                    _attach_arc(arc, a, b)
            cand = LinkDiagram(tuple(arc), tuple(over), base.free_loops)
            candidates.append(cand)
            if genus(cand) == target:
                return cand
    raise DiagramError("no reconnection preserves the genus (internal error)")


def find_undotted_bigons(d: LinkDiagram) -> list[tuple[int, int]]:
    """Undotted faces bounded by two arcs joining two distinct crossings."""
    tp = checkerboard(d, require_connected=False)
    fs = surface.faces(d.to_embedded())
    out = []
    for f, orbit in enumerate(fs.faces):
        if tp.face_shade[f] or len(orbit) != 2:
            continue
        a, b = orbit
        if a // 4 != b // 4:
            out.append((min(a // 4, b // 4), max(a // 4, b // 4)))
    return out


def remove_undotted_bigon(d: LinkDiagram, bigon: tuple[int, int] | None = None) -> tuple[LinkDiagram, tuple[int, int]]:
    """Smooth both crossings of an undotted bigon and delete the circle so formed."""
    if not is_alternating(d):
        raise DiagramError("bigon removal needs an alternating diagram")
    bigons = find_undotted_bigons(d)
    if not bigons:
        raise DiagramError("no undotted bigon")
    if bigon is None:
        bigon = bigons[0]
    elif tuple(sorted(bigon)) not in bigons:
        raise DiagramError(f"crossings {bigon} do not bound an undotted bigon")
    a, b = bigon
    out = smooth_sites(d, {a: KISS, b: KISS})
    if out.free_loops <= d.free_loops:
        raise DiagramError("bigon smoothing produced no circle (internal error)")
    return LinkDiagram(out.arc, out.over, out.free_loops - 1), (a, b)


def collapse_parallel_classes(d: LinkDiagram) -> tuple[LinkDiagram, int]:
    """Smooth all but the first crossing of each parallel class of the dual Tait graph.

    Returns the simplified diagram and the number r of crossings removed.
    """
    tp = checkerboard(d, require_connected=False)
    drop = {}
    for cls in tp.dual.parallel_classes():
        for idx in cls[1:]:
            drop[tp.dual.sites[idx]] = KISS
    if not drop:
        return d, 0
    return smooth_sites(d, drop), len(drop)


@dataclass(frozen=True)
class ReductionStep:
    kind: str  # "collapse" or "bigon"
    diagram: LinkDiagram
    removed: tuple[int, ...]
    r: int = 0


def reduce_all_bigons(d: LinkDiagram) -> tuple[LinkDiagram, int, list[ReductionStep]]:
    """Alternate dotted-chain collapse and undotted-bigon removal until no bigon face remains.

    Returns the final diagram, the total collapse exponent r and the steps.
    """
    steps = []
    total_r = 0
    cur = d
    while True:
        nxt, r = collapse_parallel_classes(cur)
        if r:
            total_r += r
            steps.append(ReductionStep("collapse", nxt, (), r))
            cur = nxt
        if not find_undotted_bigons(cur):
            break
        nxt, removed = remove_undotted_bigon(cur)
        steps.append(ReductionStep("bigon", nxt, removed))
        cur = nxt
    return cur, total_r, steps


def has_bigon_face(d: LinkDiagram) -> bool:
    if d.crossing_count == 0:
        return False
    fs = surface.faces(d.to_embedded())
    return any(len(o) == 2 and o[0] // 4 != o[1] // 4 for o in fs.faces)


# -- flypes -----------------------------------------------------------------------


def _tangle_boundary_cycle(d: LinkDiagram, tangle: set[int], boundary: list[int]) -> dict[int, int]:
    """Counterclockwise successor of each boundary dart around the contracted tangle."""
    rot = lambda x: 4 * (x // 4) + (x % 4 + 1) % 4  # noqa: E731
    bset = set(boundary)
    nxt = {}
    for t in boundary:
        x = rot(t)
        steps = 0
        while x not in bset:
            x = rot(d.arc[x])
            steps += 1
            if steps > 4 * d.crossing_count + 4:
                raise DiagramError("tangle boundary walk does not close")
        nxt[t] = x
    return nxt


def apply_flype(d: LinkDiagram, pivot: int, tangle: Iterable[int]) -> LinkDiagram:
    """Rotate ``tangle`` about the axis through ``pivot`` and carry the pivot across it."""
    tangle = set(tangle)
    n = d.crossing_count
    if not 0 <= pivot < n:
        raise DiagramError(f"pivot {pivot} is not a crossing")
    if pivot in tangle:
        raise DiagramError("pivot must lie outside the tangle")
    if not tangle:
        return d
    if any(not 0 <= t < n for t in tangle):
        raise DiagramError("tangle names a nonexistent crossing")
    in_t = lambda x: x // 4 in tangle  # noqa: E731
    boundary = sorted(x for t in tangle for x in range(4 * t, 4 * t + 4) if not in_t(d.arc[x]))
    if len(boundary) != 4:
        raise DiagramError(f"tangle has {len(boundary)} boundary ends, not 4")
    piv = [x for x in range(4 * pivot, 4 * pivot + 4)]
    to_t = [x for x in piv if in_t(d.arc[x])]
    if len(to_t) != 2:
        raise DiagramError("pivot does not meet the tangle in exactly two ends")
    rot = lambda x: 4 * (x // 4) + (x % 4 + 1) % 4  # noqa: E731
    if rot(to_t[0]) == to_t[1]:
        xb, xa = to_t
    elif rot(to_t[1]) == to_t[0]:
        xb, xa = to_t[1], to_t[0]
    else:
        raise DiagramError("pivot's tangle ends are not adjacent")
    xc = rot(xa)
    xd = rot(xc)
    t_nw, t_sw = d.arc[xa], d.arc[xb]
    cyc = _tangle_boundary_cycle(d, tangle, boundary)
    if sorted(cyc.values()) != boundary:
        raise DiagramError("tangle boundary is not a single cycle")
    if cyc[t_nw] != t_sw:
        raise DiagramError("pivot does not sit against consecutive tangle ends")
    t_se = cyc[t_sw]
    t_ne = cyc[t_se]
    if cyc[t_ne] != t_nw:
        raise DiagramError("tangle boundary is not a 4-cycle")
    o1, o2 = d.arc[xc], d.arc[xd]
    o_ne, o_se = d.arc[t_ne], d.arc[t_se]
    if in_t(o1) or in_t(o2) or o1 // 4 == pivot or o2 // 4 == pivot:
        raise DiagramError("pivot's outer ends must leave the flype region")
    # reflect the tangle: reverse each rotation and swap over/under
    perm = list(range(4 * n))
    over = list(d.over)
    for t in tangle:
        for k in range(4):
            perm[4 * t + k] = 4 * t + (-k) % 4
        over[t] = 1 - over[t]
    arc = list(d.arc)
    for x in range(4 * n):
        if in_t(x) and in_t(d.arc[x]):
            arc[perm[x]] = perm[d.arc[x]]
    P = lambda x: perm[x]  # noqa: E731
    if o_ne == xc or o_ne == xd or o_se == xc or o_se == xd:
        raise DiagramError("degenerate flype site")
    _attach_arc(arc, o1, P(t_sw))
    _attach_arc(arc, o2, P(t_nw))
    _attach_arc(arc, xc, P(t_se))
    _attach_arc(arc, xd, P(t_ne))
    _attach_arc(arc, xa, o_ne)
    _attach_arc(arc, xb, o_se)
    out = LinkDiagram(tuple(arc), tuple(over), d.free_loops)
    if genus(out) != genus(d):
        raise DiagramError("flype site is not a disk tangle (genus changed)")
    return out


# -- blow-up and medial -------------------------------------------------------------


def blow_up(g: EmbeddedGraph) -> MatchedCubicGraph:
    """Replace each degree-k vertex by a k-cycle; the old edges become the matching."""
    rep = surface.validate(g)
    if not rep:
        raise GraphError("; ".join(rep.problems))
    D = g.dart_count
    if D == 0:
        return MatchedCubicGraph.create(EmbeddedGraph(0, (), ()), [])
    cycles = []
    edges = list(g.edges())
    for cyc in g.vertices():
        k = len(cyc)
        for i, d in enumerate(cyc):
            to_next = D + 2 * d
            to_prev = D + 2 * d + 1
            cycles.append((d, to_next, to_prev))
            nxt = cyc[(i + 1) % k]
            edges.append((to_next, D + 2 * nxt + 1))
    h = EmbeddedGraph.from_vertex_cycles(cycles, edges)
    return MatchedCubicGraph.create(h, g.edges())


def medial(g: EmbeddedGraph) -> LinkDiagram:
    """Alternating diagram whose Tait graph is ``g``."""
    return from_matched_graph(blow_up(g))
