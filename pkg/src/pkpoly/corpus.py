"""Built-in corpus of graphs and diagrams with their expected invariants.

Entries are stored as RSG/LKD text. Constructed entries (medial diagrams,
connected sums) are serialised when the corpus is first loaded, so every
entry can be shown and re-parsed like a file.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from . import diagram as dg
from .diagram import LinkDiagram
from .surface import EmbeddedGraph, MatchedCubicGraph, parse_rsg


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    kind: str  # "diagram", "matched" or "graph"
    payload: str
    expected: dict = field(default_factory=dict)
    note: str = ""
    tags: tuple[str, ...] = ()

    def load(self):
        if self.kind == "graph":
            g, _ = parse_rsg(self.payload)
            return g
        if self.kind == "matched":
            g, m = parse_rsg(self.payload)
            return MatchedCubicGraph(g, m)
        return dg.parse_diagram(self.payload)

    def diagram(self) -> LinkDiagram:
        obj = self.load()
        if isinstance(obj, EmbeddedGraph):
            return dg.medial(obj)
        if isinstance(obj, MatchedCubicGraph):
            return dg.from_matched_graph(obj)
        return obj


# -- plane graphs --------------------------------------------------------------------


def _ring(k: int, radius: float, phase: float = 0.0) -> list[tuple[float, float]]:
    return [
        (radius * math.cos(phase + 2 * math.pi * i / k), radius * math.sin(phase + 2 * math.pi * i / k))
        for i in range(k)
    ]


def cycle_graph(n: int) -> EmbeddedGraph:
    """The plane n-cycle; n = 1 is a loop and n = 2 a digon."""
    return EmbeddedGraph.from_vertex_cycles(
        [(2 * i, 2 * i + 1) for i in range(n)],
        [(2 * i + 1, (2 * i + 2) % (2 * n)) for i in range(n)],
    )


def theta_graph() -> EmbeddedGraph:
    return EmbeddedGraph.from_vertex_cycles([(0, 2, 4), (1, 5, 3)], [(0, 1), (2, 3), (4, 5)])


def subdivided_theta(a: int, b: int, c: int) -> EmbeddedGraph:
    """Two poles joined by internally disjoint paths of lengths a, b, c."""
    counter = [0]

    def dart():
        counter[0] += 1
        return counter[0] - 1

    north, south, middle, edges = [], [], [], []
    for length in (a, b, c):
        prev = dart()
        north.append(prev)
        for _ in range(length - 1):
            d1, d2 = dart(), dart()
            middle.append((d1, d2))
            edges.append((prev, d1))
            prev = d2
        end = dart()
        south.append(end)
        edges.append((prev, end))
    cycles = [tuple(north), tuple(reversed(south))] + middle
    return EmbeddedGraph.from_vertex_cycles(cycles, edges)


def k4_graph() -> EmbeddedGraph:
    # centre 3 inside the triangle 0, 1, 2
    pts = _ring(3, 1.0) + [(0.0, 0.0)]
    return EmbeddedGraph.from_coordinates(pts, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)])


def prism_graph() -> EmbeddedGraph:
    pts = _ring(3, 1.0) + _ring(3, 2.0)
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    return EmbeddedGraph.from_coordinates(pts, edges)


def cube_graph() -> EmbeddedGraph:
    pts = _ring(4, 1.0) + _ring(4, 2.0)
    edges = [(i, (i + 1) % 4) for i in range(4)] + [(4 + i, 4 + (i + 1) % 4) for i in range(4)]
    edges += [(i, i + 4) for i in range(4)]
    return EmbeddedGraph.from_coordinates(pts, edges)


def wheel_graph(k: int) -> EmbeddedGraph:
    pts = _ring(k, 1.0) + [(0.0, 0.0)]
    edges = [(i, (i + 1) % k) for i in range(k)] + [(i, k) for i in range(k)]
    return EmbeddedGraph.from_coordinates(pts, edges)


def bowtie_graph() -> EmbeddedGraph:
    pts = [(0.0, 0.0), (1.0, 1.0), (1.0, -1.0), (-1.0, -1.0), (-1.0, 1.0)]
    return EmbeddedGraph.from_coordinates(pts, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])


def petersen_torus() -> MatchedCubicGraph:
    """Petersen graph in the torus (five faces), matched along its spokes."""
    cycles = [
        (0, 9, 10), (1, 2, 12), (3, 4, 14), (5, 6, 16), (7, 18, 8),
        (11, 20, 27), (13, 29, 22), (15, 21, 24), (17, 23, 26), (19, 28, 25),
    ]
    g = EmbeddedGraph.from_vertex_cycles(cycles, [(2 * k, 2 * k + 1) for k in range(15)])
    return MatchedCubicGraph.create(g, [(10, 11), (12, 13), (14, 15), (16, 17), (18, 19)])


# -- literal diagrams found by search ----------------------------------------------

CUBE_TORUS = """\
lkd 3 0
x 0 1 2 3 13
x 4 5 6 7 02
x 8 9 10 11 02
a 0 1
a 2 4
a 3 8
a 5 9
a 6 10
a 7 11
"""

VIRTUAL_BORROMEAN = """\
lkd 5 0
x 0 1 2 3 02
x 4 5 6 7 13
x 8 9 10 11 02
x 12 13 14 15 02
x 16 17 18 19 13
a 0 12
a 1 7
a 2 8
a 3 17
a 4 15
a 5 9
a 6 18
a 10 14
a 11 19
a 13 16
"""

NONALTERNATING_ODD = """\
lkd 4 0
x 0 1 2 3 13
x 4 5 6 7 13
x 8 9 10 11 02
x 12 13 14 15 13
a 0 13
a 1 12
a 2 6
a 3 10
a 4 8
a 5 11
a 7 15
a 9 14
"""

DEGREE_DEFICIT = """\
lkd 4 0
x 0 1 2 3 02
x 4 5 6 7 02
x 8 9 10 11 13
x 12 13 14 15 02
a 0 6
a 1 5
a 2 9
a 3 8
a 4 13
a 7 14
a 10 12
a 11 15
"""

_FLYPE_ARCS = [
    ((0, (2, 3, 4, 5, 6)), [
        (0, 5), (1, 4), (2, 25), (3, 18), (6, 11), (7, 26), (8, 17), (9, 12),
        (10, 27), (13, 16), (14, 21), (15, 20), (19, 22), (23, 24)]),
    ((0, (2, 3, 4, 5, 6)), [
        (0, 5), (1, 4), (2, 27), (3, 10), (6, 15), (7, 24), (8, 17), (9, 12),
        (11, 26), (13, 16), (14, 21), (18, 23), (19, 22), (20, 25)]),
    ((0, (1, 2, 5)), [
        (0, 5), (1, 8), (2, 17), (3, 12), (4, 9), (6, 27), (7, 22), (10, 21),
        (11, 20), (13, 16), (14, 25), (15, 24), (18, 23), (19, 26)]),
]


def _lkd_from_arcs(n: int, arcs) -> str:
    lines = [f"lkd {n} 0"]
    lines += [f"x {4 * i} {4 * i + 1} {4 * i + 2} {4 * i + 3} 02" for i in range(n)]
    lines += [f"a {a} {b}" for a, b in arcs]
    return "\n".join(lines) + "\n"


def _poly(*coeffs: int) -> str:
    return "poly " + " ".join(map(str, coeffs)) if coeffs else "poly"


@lru_cache(maxsize=1)
def entries() -> tuple[CorpusEntry, ...]:
    out: list[CorpusEntry] = []

    def diag(name, d, expected=None, note="", tags=()):
        text = d if isinstance(d, str) else d.to_lkd()
        out.append(CorpusEntry(name, "diagram", text, expected or {}, note, tuple(tags)))

    left = dg.medial(theta_graph())
    right = dg.medial(cycle_graph(3))
    diag("theta-1", dg.medial(cycle_graph(1)),
         {"polynomial": _poly(0, -1, 1), "colorable": 1},
         "one-crossing diagram of the theta graph with one matched edge; the (2,1) torus case",
         ("plane", "alternating", "torus-right"))
    diag("left-trefoil", left,
         {"polynomial": _poly(0, 2, -3, 1), "colorable": 1, "P(3)": 6},
         "left-hand trefoil, the prism with its rungs matched", ("plane", "alternating"))
    diag("right-trefoil", right,
         {"polynomial": _poly(0, -4, 4), "colorable": 4, "P(3)": 24, "factor_r": 2},
         "right-hand trefoil, three digons in a ring", ("plane", "alternating", "torus-right"))
    for n in range(2, 7):
        c = 1 << (n - 1)
        exp = {"polynomial": _poly(0, -c, c), "colorable": c}
        if n == 4:
            exp["factor_r"] = 3
        diag(f"torus-2-{n}", dg.medial(cycle_graph(n)), exp,
             f"right-hand (2,{n}) torus diagram", ("plane", "alternating", "torus-right"))
    diag("left-torus-2-4", dg.mirror(dg.medial(cycle_graph(4))), {},
         "left-hand (2,4) torus diagram; every undotted face is a bigon", ("plane", "alternating"))
    diag("cube-torus", CUBE_TORUS,
         {"polynomial": _poly(0, 2, -4, 2), "colorable": 2, "component_graphs": "P3"},
         "two-component link in the torus with two strict maxima", ("torus",))
    diag("virtual-borromean", VIRTUAL_BORROMEAN,
         {"polynomial": _poly(0, 0, -1, 1), "colorable": 3, "a1": 0},
         "three-component torus diagram whose linear coefficient vanishes", ("torus",))
    diag("nonalternating-odd", NONALTERNATING_ODD,
         {"polynomial": _poly(0, 5, -8, 3), "colorable": 3, "a1": 5},
         "plane non-alternating diagram with odd linear coefficient", ("plane",))
    diag("degree-deficit", DEGREE_DEFICIT,
         {"polynomial": _poly(0, -1, 1), "colorable": 1, "s0_norm": 3},
         "plane diagram whose only colorable state is itself; degree below the all-smoothed count",
         ("plane",))
    diag("borromean", dg.medial(k4_graph()),
         {"polynomial": _poly(0, -4, 8, -5, 1)},
         "standard Borromean rings; Tait graph K4", ("plane", "alternating"))
    diag("link-8-1-3", dg.medial(subdivided_theta(2, 2, 4)),
         {"undotted": 3, "dotted": 7, "chiral": True},
         "three-component 8-crossing link taken as the pretzel (2,2,4) projection",
         ("plane", "alternating"))
    diag("figure-eight", dg.medial(subdivided_theta(1, 1, 2)),
         {"chiral": False},
         "figure-eight knot; its diagram is isomorphic to its mirror", ("plane", "alternating"))
    for form, poly in (("a", _poly()), ("b", _poly(0, -16, 48, -48, 16)), ("c", _poly(0, 16, -32, 16))):
        diag(f"sum-{form}", dg.connected_sum(right, 0, right, 0, form), {"polynomial": poly, "form": form},
             f"two right trefoils joined in connected-sum form ({form})", ("plane", "alternating", "sum"))
    for k, ((pivot, tangle), arcs) in enumerate(_FLYPE_ARCS, start=1):
        diag(f"flype-{k}", _lkd_from_arcs(7, arcs),
             {"polynomial": _poly(0, -16, 32, -20, 4), "pivot": pivot, "tangle": list(tangle)},
             "seven-crossing alternating knot with a nontrivial flype site", ("plane", "alternating", "flype"))
    out.append(CorpusEntry(
        "petersen", "matched", petersen_torus().to_rsg(), {"P(3)": 0, "edge3": 0},
        "Petersen graph in the torus matched along its spokes", ("torus", "snark")))
    for name, g, note in (
        ("graph-theta", theta_graph(), "theta graph"),
        ("graph-k4", k4_graph(), "K4"),
        ("graph-prism", prism_graph(), "triangular prism"),
        ("graph-cube", cube_graph(), "cube"),
    ):
        exp = {"P(3)": 6} if name in ("graph-theta", "graph-k4") else {}
        out.append(CorpusEntry(name, "graph", g.to_rsg(), exp, f"plane cubic map: {note}", ("map", "cubic")))
    for name, g, note in (
        ("graph-edge", cycle_graph(2), "digon (two parallel edges)"),
        ("graph-c3", cycle_graph(3), "triangle"),
        ("graph-c4", cycle_graph(4), "square"),
        ("graph-wheel-4", wheel_graph(4), "wheel with four spokes"),
        ("graph-bowtie", bowtie_graph(), "two triangles sharing a vertex"),
    ):
        out.append(CorpusEntry(name, "graph", g.to_rsg(), {}, f"plane graph: {note}", ("map",)))
    return tuple(out)


def names() -> list[str]:
    return [e.name for e in entries()]


def get(name: str) -> CorpusEntry:
    for e in entries():
        if e.name == name:
            return e
    raise KeyError(f"no corpus entry named {name!r}")


def diagram_entries() -> list[CorpusEntry]:
    return [e for e in entries() if e.kind != "graph"]


def graph_entries() -> list[CorpusEntry]:
    return [e for e in entries() if e.kind == "graph"]
