"""Graphs cellularly embedded in closed orientable surfaces, as rotation systems.

Darts are the integers ``0 .. dart_count-1``. ``edge_pairing[d]`` is the
opposite dart of the same edge and ``rotation[d]`` is the next dart
counterclockwise around the same vertex. Faces are the orbits of
``d -> rotation[edge_pairing[d]]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Raised for structurally invalid graph input."""


Edge = tuple[int, int]


def _cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        d = start
        while not seen[d]:
            seen[d] = True
            cyc.append(d)
            d = perm[d]
        out.append(tuple(cyc))
    return out


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    problems: tuple[str, ...] = ()
    dart: int | None = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class FaceSet:
    faces: tuple[tuple[int, ...], ...]
    face_of: tuple[int, ...] = field(repr=False)

    def __len__(self):
        return len(self.faces)


@dataclass(frozen=True, eq=True)
class EmbeddedGraph:
    dart_count: int
    edge_pairing: tuple[int, ...]
    rotation: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "edge_pairing", tuple(self.edge_pairing))
        object.__setattr__(self, "rotation", tuple(self.rotation))

    # -- construction helpers -------------------------------------------

    @classmethod
    def from_vertex_cycles(cls, cycles: Iterable[Sequence[int]], edges: Iterable[Edge]) -> "EmbeddedGraph":
        """Build from counterclockwise dart cycles and dart pairs."""
        cycles = [tuple(c) for c in cycles]
        edges = [tuple(e) for e in edges]
        n = sum(len(c) for c in cycles)
        rotation = [-1] * n
        pairing = [-1] * n
        for cyc in cycles:
            for i, d in enumerate(cyc):
                if not 0 <= d < n:
                    raise GraphError(f"dart {d} out of range 0..{n - 1}")
                if rotation[d] != -1:
                    raise GraphError(f"dart {d} appears in two vertex cycles")
                rotation[d] = cyc[(i + 1) % len(cyc)]
        for a, b in edges:
            for d in (a, b):
                if not 0 <= d < n:
                    raise GraphError(f"dart {d} out of range 0..{n - 1}")
                if pairing[d] != -1:
                    raise GraphError(f"dart {d} appears in two edges")
            pairing[a] = b
            pairing[b] = a
        if -1 in rotation:
            raise GraphError(f"dart {rotation.index(-1)} is in no vertex cycle")
        if -1 in pairing:
            raise GraphError(f"dart {pairing.index(-1)} is in no edge")
        return cls(n, tuple(pairing), tuple(rotation))

    @classmethod
    def from_incidences(cls, vertex_count: int, edges: Sequence[Edge], rotations: Sequence[Sequence[int]]) -> "EmbeddedGraph":
        """Edge ``i = (u, v)`` owns darts ``2i`` (at u) and ``2i+1`` (at v).

        ``rotations[v]`` lists the darts at ``v`` counterclockwise.
        """
        if len(rotations) != vertex_count:
            raise GraphError("need one rotation per vertex")
        for i, (u, v) in enumerate(edges):
            if 2 * i not in rotations[u] or 2 * i + 1 not in rotations[v]:
                raise GraphError(f"edge {i} darts not placed at its endpoints")
        return cls.from_vertex_cycles(rotations, [(2 * i, 2 * i + 1) for i in range(len(edges))])

    @classmethod
    def from_coordinates(cls, points: Sequence[tuple[float, float]], edges: Sequence[Edge]) -> "EmbeddedGraph":
        """Straight-line drawing of a simple graph; rotations sorted by angle."""
        around: list[list[tuple[float, int]]] = [[] for _ in points]
        for i, (u, v) in enumerate(edges):
            if u == v:
                raise GraphError("loops need from_incidences")
            (x0, y0), (x1, y1) = points[u], points[v]
            around[u].append((math.atan2(y1 - y0, x1 - x0), 2 * i))
            around[v].append((math.atan2(y0 - y1, x0 - x1), 2 * i + 1))
        rotations = [[d for _, d in sorted(a)] for a in around]
        if any(not r for r in rotations):
            raise GraphError("isolated vertices cannot be represented")
        return cls.from_incidences(len(points), edges, rotations)

    # -- basic structure -------------------------------------------------

    @property
    def edge_count(self) -> int:
        return self.dart_count // 2

    def vertices(self) -> list[tuple[int, ...]]:
        """Vertex dart cycles, each starting at its smallest dart."""
        return _cycles(self.rotation)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices())

    def vertex_of(self) -> list[int]:
        out = [0] * self.dart_count
        for i, cyc in enumerate(self.vertices()):
            for d in cyc:
                out[d] = i
        return out

    def edges(self) -> list[Edge]:
        """Edges named by (smaller dart, larger dart), sorted."""
        return sorted((d, self.edge_pairing[d]) for d in range(self.dart_count) if d < self.edge_pairing[d])

    def edge_key(self, d: int) -> Edge:
        e = self.edge_pairing[d]
        return (d, e) if d < e else (e, d)

    def degrees(self) -> list[int]:
        return [len(c) for c in self.vertices()]

    def inverse_rotation(self) -> tuple[int, ...]:
        inv = [0] * self.dart_count
        for d, r in enumerate(self.rotation):
            inv[r] = d
        return tuple(inv)

    def reversed(self) -> "EmbeddedGraph":
        """Same graph with every rotation reversed (the mirror-image surface)."""
        return EmbeddedGraph(self.dart_count, self.edge_pairing, self.inverse_rotation())

    def to_rsg(self, matching: Iterable[Edge] = ()) -> str:
        lines = [f"rsg {self.dart_count}"]
        for cyc in self.vertices():
            lines.append("v " + " ".join(map(str, cyc)))
        for a, b in self.edges():
            lines.append(f"e {a} {b}")
        for a, b in sorted(matching):
            lines.append(f"m {a} {b}")
        return "\n".join(lines) + "\n"


# -- operations ---------------------------------------------------------------


def validate(graph: EmbeddedGraph) -> ValidationReport:
    n = graph.dart_count
    problems = []
    bad = None
    if n % 2:
        problems.append(f"dart_count {n} is odd")
    if len(graph.edge_pairing) != n or len(graph.rotation) != n:
        problems.append("pairing/rotation length differs from dart_count")
        return ValidationReport(False, tuple(problems), None)
    for d, e in enumerate(graph.edge_pairing):
        if not 0 <= e < n:
            problems.append(f"pairing of dart {d} out of range")
            bad = d if bad is None else bad
        elif e == d:
            problems.append(f"dart {d} is a fixed point of the edge pairing")
            bad = d if bad is None else bad
        elif graph.edge_pairing[e] != d:
            problems.append(f"edge pairing is not an involution at dart {d}")
            bad = d if bad is None else bad
    seen: dict[int, int] = {}
    for d, r in enumerate(graph.rotation):
        if not 0 <= r < n:
            problems.append(f"rotation of dart {d} out of range")
            bad = d if bad is None else bad
        elif r in seen:
            problems.append(f"rotation is not a bijection: darts {seen[r]} and {d} both map to {r}")
            bad = d if bad is None else bad
        else:
            seen[r] = d
    return ValidationReport(not problems, tuple(problems), bad)


def _require_valid(graph: EmbeddedGraph):
    rep = validate(graph)
    if not rep:
        raise GraphError("; ".join(rep.problems))


def faces(graph: EmbeddedGraph) -> FaceSet:
    _require_valid(graph)
    step = [graph.rotation[graph.edge_pairing[d]] for d in range(graph.dart_count)]
    orbits = _cycles(step)
    face_of = [0] * graph.dart_count
    for i, orb in enumerate(orbits):
        for d in orb:
            face_of[d] = i
    return FaceSet(tuple(orbits), tuple(face_of))


def connected_components(graph: EmbeddedGraph) -> tuple[int, list[int]]:
    """Number of components and a component label per vertex (vertex order of ``vertices()``)."""
    verts = graph.vertices()
    vof = graph.vertex_of()
    label = [-1] * len(verts)
    count = 0
    for start in range(len(verts)):
        if label[start] != -1:
            continue
        label[start] = count
        stack = [start]
        while stack:
            v = stack.pop()
            for d in verts[v]:
                w = vof[graph.edge_pairing[d]]
                if label[w] == -1:
                    label[w] = count
                    stack.append(w)
        count += 1
    return count, label


def euler_characteristic(graph: EmbeddedGraph) -> int:
    return graph.vertex_count - graph.edge_count + len(faces(graph))


def genus(graph: EmbeddedGraph) -> int:
    _require_valid(graph)
    ncomp, _ = connected_components(graph)
    if ncomp != 1:
        raise GraphError(f"genus needs a connected graph (got {ncomp} components)")
    chi = euler_characteristic(graph)
    if chi % 2 or chi > 2:
        raise GraphError(f"Euler characteristic {chi} impossible for an orientable surface")
    return (2 - chi) // 2


def component_genera(graph: EmbeddedGraph) -> list[int]:
    """Genus of each connected component (in component-label order)."""
    ncomp, label = connected_components(graph)
    verts = graph.vertices()
    fs = faces(graph)
    vof = graph.vertex_of()
    V = [0] * ncomp
    E = [0] * ncomp
    F = [0] * ncomp
    for i in range(len(verts)):
        V[label[i]] += 1
    for a, _ in graph.edges():
        E[label[vof[a]]] += 1
    for orb in fs.faces:
        F[label[vof[orb[0]]]] += 1
    return [(2 - (V[c] - E[c] + F[c])) // 2 for c in range(ncomp)]


def bridges(graph: EmbeddedGraph) -> set[Edge]:
    """Edges whose removal increases the number of components (Tarjan lowpoint)."""
    _require_valid(graph)
    verts = graph.vertices()
    vof = graph.vertex_of()
    n = len(verts)
    disc = [-1] * n
    low = [0] * n
    out: set[Edge] = set()
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        # frame: (vertex, dart used to enter, iterator index)
        stack = [(root, -1, 0)]
        while stack:
            v, in_dart, i = stack[-1]
            if i < len(verts[v]):
                stack[-1] = (v, in_dart, i + 1)
                d = verts[v][i]
                if in_dart != -1 and d == graph.edge_pairing[in_dart]:
                    continue  # the tree edge itself, by dart identity
                w = vof[graph.edge_pairing[d]]
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, d, 0))
                else:
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        out.add(graph.edge_key(in_dart))
    return out


# -- matched cubic graphs ------------------------------------------------------


@dataclass(frozen=True)
class MatchedCubicGraph:
    graph: EmbeddedGraph
    matching: frozenset[Edge]

    def __post_init__(self):
        g = self.graph
        norm = frozenset(g.edge_key(a) for a, _ in self.matching)
        object.__setattr__(self, "matching", norm)
        problems = matched_problems(g, norm)
        if problems:
            raise GraphError("; ".join(problems))

    @classmethod
    def create(cls, graph: EmbeddedGraph, matching: Iterable[Edge]) -> "MatchedCubicGraph":
        return cls(graph, frozenset(tuple(e) for e in matching))

    def matching_edges(self) -> list[Edge]:
        return sorted(self.matching)

    def non_matching_edges(self) -> list[Edge]:
        return [e for e in self.graph.edges() if e not in self.matching]

    def to_rsg(self) -> str:
        return self.graph.to_rsg(self.matching)


def matched_problems(g: EmbeddedGraph, matching: frozenset[Edge]) -> list[str]:
    rep = validate(g)
    if not rep:
        return list(rep.problems)
    problems = []
    for a, b in matching:
        if g.edge_pairing[a] != b:
            problems.append(f"matching pair ({a}, {b}) is not an edge")
    if problems:
        return problems
    verts = g.vertices()
    vof = g.vertex_of()
    for i, cyc in enumerate(verts):
        if len(cyc) != 3:
            problems.append(f"vertex {i} (darts {cyc}) has degree {len(cyc)}, not 3")
    if len(verts) % 2:
        problems.append(f"cubic graph with odd vertex count {len(verts)}")
    hits = [0] * len(verts)
    for a, b in matching:
        if vof[a] == vof[b]:
            problems.append(f"matching edge ({a}, {b}) is a loop")
        hits[vof[a]] += 1
        hits[vof[b]] += 1
    for i, h in enumerate(hits):
        if h != 1:
            problems.append(f"vertex {i} meets {h} matching edges")
    return problems


def perfect_matchings(g: EmbeddedGraph) -> list[frozenset[Edge]]:
    """All perfect matchings of a (small) graph, loops excluded."""
    verts = g.vertices()
    vof = g.vertex_of()
    edges = [e for e in g.edges() if vof[e[0]] != vof[e[1]]]
    at: list[list[Edge]] = [[] for _ in verts]
    for e in edges:
        at[vof[e[0]]].append(e)
        at[vof[e[1]]].append(e)
    out: list[frozenset[Edge]] = []
    covered = [False] * len(verts)

    def rec(chosen: list[Edge]):
        try:
            v = covered.index(False)
        except ValueError:
            out.append(frozenset(chosen))
            return
        for e in at[v]:
            w = vof[e[0]] if vof[e[1]] == v else vof[e[1]]
            if covered[w]:
                continue
            covered[v] = covered[w] = True
            chosen.append(e)
            rec(chosen)
            chosen.pop()
            covered[v] = covered[w] = False

    rec([])
    return sorted(out, key=sorted)


# -- isomorphism -----------------------------------------------------------------


def map_isomorphism(g1: EmbeddedGraph, g2: EmbeddedGraph, marked1: frozenset = frozenset(), marked2: frozenset = frozenset()) -> dict[int, int] | None:
    """Orientation-preserving isomorphism of connected rotation systems.

    Optional marked edge sets (e.g. matchings) must correspond.
    """
    if g1.dart_count != g2.dart_count:
        return None
    if g1.dart_count == 0:
        return {}
    if connected_components(g1)[0] != 1 or connected_components(g2)[0] != 1:
        raise GraphError("map_isomorphism needs connected graphs")
    m1 = {d for e in marked1 for d in e}
    m2 = {d for e in marked2 for d in e}
    for target in range(g2.dart_count):
        phi = {0: target}
        stack = [0]
        ok = True
        while stack and ok:
            d = stack.pop()
            e = phi[d]
            if (d in m1) != (e in m2):
                ok = False
                break
            for a, b in ((g1.rotation[d], g2.rotation[e]), (g1.edge_pairing[d], g2.edge_pairing[e])):
                if a in phi:
                    if phi[a] != b:
                        ok = False
                        break
                else:
                    phi[a] = b
                    stack.append(a)
        if ok and len(set(phi.values())) == g1.dart_count:
            return phi
    return None


# -- RSG text format -------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


def _tokens(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        toks = []
        col = 0
        for tok in line.split():
            col = line.index(tok, col)
            toks.append((tok, col + 1))
            col += len(tok)
        yield lineno, toks


def _ints(lineno, toks):
    out = []
    for tok, col in toks:
        try:
            out.append(int(tok))
        except ValueError:
            raise ParseError(f"expected an integer, got {tok!r}", lineno, col) from None
    return out


def parse_rsg(text: str) -> tuple[EmbeddedGraph, frozenset[Edge] | None]:
    """Parse RSG text. Returns the graph and the matching (None if no ``m`` lines)."""
    header = None
    cycles = []
    edges = []
    matching = []
    for lineno, toks in _tokens(text):
        kind, col = toks[0]
        args = _ints(lineno, toks[1:])
        if kind == "rsg":
            if header is not None:
                raise ParseError("duplicate header", lineno, col)
            if len(args) != 1 or args[0] < 0:
                raise ParseError("header must be 'rsg <dart_count>'", lineno, col)
            header = args[0]
        elif header is None:
            raise ParseError("missing 'rsg' header", lineno, col)
        elif kind == "v":
            if not args:
                raise ParseError("empty vertex cycle", lineno, col)
            cycles.append(args)
        elif kind == "e":
            if len(args) != 2:
                raise ParseError("edge line needs two darts", lineno, col)
            edges.append(tuple(args))
        elif kind == "m":
            if len(args) != 2:
                raise ParseError("matching line needs two darts", lineno, col)
            matching.append(tuple(args))
        else:
            raise ParseError(f"unknown record {kind!r}", lineno, col)
    if header is None:
        raise ParseError("empty input: missing 'rsg' header")
    g = EmbeddedGraph.from_vertex_cycles(cycles, edges)
    if g.dart_count != header:
        raise ParseError(f"header says {header} darts, cycles list {g.dart_count}")
    if not matching:
        return g, None
    return g, frozenset((min(a, b), max(a, b)) for a, b in matching)
