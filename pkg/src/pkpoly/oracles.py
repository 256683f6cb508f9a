"""Brute-force counters used as independent checks on the state sum.

None of these touch the state engine: they count colorings directly on
the cubic graph, or walk corners of a plane graph.
"""

from __future__ import annotations

from .polynomial import IntPolynomial
from .surface import EmbeddedGraph, GraphError, MatchedCubicGraph
from . import surface
from .states import BudgetExceeded

DEFAULT_ORACLE_BUDGET = 10**8


class _Counter:
    def __init__(self, budget: int | None):
        self.left = DEFAULT_ORACLE_BUDGET if budget is None else budget
        self.limit = self.left

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise BudgetExceeded(f"oracle search exceeded {self.limit} assignments", "--budget-oracle")


def _bfs_order(items: list, neighbours) -> list:
    """Order items so that each one tends to follow something it touches."""
    seen = set()
    out = []
    for root in items:
        if root in seen:
            continue
        seen.add(root)
        queue = [root]
        while queue:
            x = queue.pop(0)
            out.append(x)
            for y in neighbours(x):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return out


def tait_coloring_count(gm: MatchedCubicGraph, n: int, budget: int | None = None) -> int:
    """Colorings of the non-matching edges with n colors such that, at every matching
    edge, the two edges at one end get two distinct colors and the two at the
    other end get the same two colors."""
    g = gm.graph
    rot = g.rotation
    key = g.edge_key
    free = [e for e in g.edges() if e not in gm.matching]
    if not free:
        return 1
    if n <= 0:
        return 0
    index = {e: i for i, e in enumerate(free)}
    # per matching edge: edge indices at each end
    constraints = []
    for a, b in gm.matching_edges():
        ua = (index[key(rot[a])], index[key(rot[rot[a]])])
        ub = (index[key(rot[b])], index[key(rot[rot[b]])])
        constraints.append((ua, ub))
    touching: list[list[int]] = [[] for _ in free]
    for ci, (ua, ub) in enumerate(constraints):
        for ei in set(ua + ub):
            touching[ei].append(ci)
    order_c = _bfs_order(
        list(range(len(constraints))),
        lambda c: [c2 for ei in set(constraints[c][0] + constraints[c][1]) for c2 in touching[ei]],
    )
    order = []
    placed = set()
    for c in order_c:
        for ei in constraints[c][0] + constraints[c][1]:
            if ei not in placed:
                placed.add(ei)
                order.append(ei)
    position = {ei: k for k, ei in enumerate(order)}
    # each constraint is checked once the last of its edges is colored
    due: list[list[int]] = [[] for _ in order]
    for ci, (ua, ub) in enumerate(constraints):
        due[max(position[e] for e in ua + ub)].append(ci)
    color = [0] * len(free)
    counter = _Counter(budget)

    def ok(ci):
        (a1, a2), (b1, b2) = constraints[ci]
        x, y = color[a1], color[a2]
        if x == y:
            return False
        return {x, y} == {color[b1], color[b2]}

    def rec(k):
        if k == len(order):
            return 1
        total = 0
        ei = order[k]
        for c in range(n):
            counter.tick()
            color[ei] = c
            if all(ok(ci) for ci in due[k]):
                total += rec(k + 1)
        return total

    return rec(0)


def edge3_coloring_count(g: EmbeddedGraph, budget: int | None = None) -> int:
    """Proper edge 3-colorings of a cubic graph."""
    rep = surface.validate(g)
    if not rep:
        raise GraphError("; ".join(rep.problems))
    if any(len(c) != 3 for c in g.vertices()):
        raise GraphError("edge 3-coloring oracle needs a cubic graph")
    edges = g.edges()
    if not edges:
        return 1
    vof = g.vertex_of()
    if any(vof[a] == vof[b] for a, b in edges):
        return 0
    index = {e: i for i, e in enumerate(edges)}
    at_vertex = [[index[g.edge_key(d)] for d in cyc] for cyc in g.vertices()]
    ends = [(vof[a], vof[b]) for a, b in edges]
    order = _bfs_order(
        list(range(len(edges))),
        lambda ei: [e2 for v in ends[ei] for e2 in at_vertex[v]],
    )
    color = [-1] * len(edges)
    counter = _Counter(budget)

    def rec(k):
        if k == len(order):
            return 1
        ei = order[k]
        total = 0
        for c in range(3):
            counter.tick()
            if any(color[e2] == c for v in ends[ei] for e2 in at_vertex[v] if e2 != ei):
                continue
            color[ei] = c
            total += rec(k + 1)
            color[ei] = -1
        return total

    return rec(0)


def _corner_ends(g: EmbeddedGraph):
    """Walk ends: 2x is the corner after dart x, 2x+1 the corner before it."""
    rot = g.rotation
    return [(2 * x, 2 * rot[x] + 1) for x in range(g.dart_count)]


def left_right_walk_count(g: EmbeddedGraph, crossed: set) -> int:
    """Closed left-right walks on the medial graph that cross exactly the edges in ``crossed``."""
    m = 2 * g.dart_count
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for a, b in _corner_ends(g):
        union(a, b)
    for d, dd in g.edges():
        if (d, dd) in crossed:
            union(2 * d, 2 * dd)
            union(2 * d + 1, 2 * dd + 1)
        else:
            union(2 * d, 2 * dd + 1)
            union(2 * dd, 2 * d + 1)
    return len({find(x) for x in range(m)})


def aigner_penrose(g: EmbeddedGraph, budget: int | None = None) -> IntPolynomial:
    """Signed subset sum of q^(number of left-right walks)."""
    from .states import check_budget

    edges = g.edges()
    check_budget(len(edges), budget)
    coeffs: dict[int, int] = {}
    for mask in range(1 << len(edges)):
        crossed = {e for i, e in enumerate(edges) if (mask >> i) & 1}
        c = left_right_walk_count(g, crossed)
        sign = -1 if bin(mask).count("1") % 2 else 1
        coeffs[c] = coeffs.get(c, 0) + sign
    top = max(coeffs) if coeffs else 0
    return IntPolynomial(tuple(coeffs.get(k, 0) for k in range(top + 1)))


def admissible_valuation_count(g: EmbeddedGraph, n: int, budget: int | None = None) -> int:
    """Colorings of the medial edges (the corners of g) such that at each medial
    vertex the two corners on one side of the edge carry two distinct colors
    and the two on the other side carry the same pair."""
    rot = g.rotation
    inv = g.inverse_rotation()
    D = g.dart_count
    if D == 0:
        return 1
    if n <= 0:
        return 0
    # corner x is the angle between dart x and rot[x]
    constraints = []
    for d, dd in g.edges():
        constraints.append(((inv[d], d), (inv[dd], dd)))
    touching: list[list[int]] = [[] for _ in range(D)]
    for ci, (u, v) in enumerate(constraints):
        for x in set(u + v):
            touching[x].append(ci)
    order_c = _bfs_order(
        list(range(len(constraints))),
        lambda c: [c2 for x in set(constraints[c][0] + constraints[c][1]) for c2 in touching[x]],
    )
    order = []
    placed = set()
    for c in order_c:
        for x in constraints[c][0] + constraints[c][1]:
            if x not in placed:
                placed.add(x)
                order.append(x)
    position = {x: k for k, x in enumerate(order)}
    due: list[list[int]] = [[] for _ in order]
    for ci, (u, v) in enumerate(constraints):
        due[max(position[x] for x in u + v)].append(ci)
    color = [0] * D
    counter = _Counter(budget)

    def ok(ci):
        (a1, a2), (b1, b2) = constraints[ci]
        if color[a1] == color[a2]:
            return False
        return {color[a1], color[a2]} == {color[b1], color[b2]}

    def rec(k):
        if k == len(order):
            return 1
        total = 0
        for c in range(n):
            counter.tick()
            color[order[k]] = c
            if all(ok(ci) for ci in due[k]):
                total += rec(k + 1)
        return total

    return rec(0)
