"""Smoothing states: component tracing, colorability and component graphs.

Strand-ends are numbered ``4s + k`` where ``k`` indexes the normalised frame
of site ``s``. A state is an integer bitmask; bit ``s`` set means the site
keeps its crossing (CROSS), clear means the dot-smoothing (KISS).

With CROSS the end ``j`` continues through ``j ^ 2``; with KISS through
``j ^ 3``. The strands through a site are then the components of ends
``4s`` and ``4s + 1``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

from .diagram import LinkDiagram, Multigraph

DEFAULT_STATE_BUDGET = 28


class BudgetExceeded(RuntimeError):
    def __init__(self, message: str, flag: str = "--budget-states"):
        self.flag = flag
        super().__init__(f"{message} (raise with {flag})")


class StateError(ValueError):
    pass


@dataclass(frozen=True)
class TransitionSystem:
    site_count: int
    arc: tuple[int, ...]
    free_loops: int = 0

    @classmethod
    def from_diagram(cls, d: LinkDiagram) -> "TransitionSystem":
        n = d.crossing_count
        end_of = {}
        for i in range(n):
            for k, dart in enumerate(d.ends(i)):
                end_of[dart] = 4 * i + k
        arc = [0] * (4 * n)
        for dart, other in enumerate(d.arc):
            arc[end_of[dart]] = end_of[other]
        return cls(n, tuple(arc), d.free_loops)

    def reconnection(self, site: int, choice: int) -> tuple[tuple[int, int], tuple[int, int]]:
        b = 4 * site
        if choice:
            return ((b, b + 2), (b + 1, b + 3))
        return ((b + 1, b + 2), (b + 3, b))


@dataclass(frozen=True)
class State:
    choices: tuple[int, ...]

    def __post_init__(self):
        if any(c not in (0, 1) for c in self.choices):
            raise StateError("state choices must be 0 (KISS) or 1 (CROSS)")

    @classmethod
    def from_mask(cls, mask: int, n: int) -> "State":
        return cls(tuple((mask >> i) & 1 for i in range(n)))

    @property
    def mask(self) -> int:
        return sum(c << i for i, c in enumerate(self.choices))

    def __len__(self):
        return len(self.choices)


@dataclass(frozen=True)
class ComponentTrace:
    component_of: tuple[int, ...]
    count: int
    site_pairs: tuple[tuple[int, int, bool], ...]  # (id, id, crossing?) per site


@dataclass(frozen=True)
class ComponentGraph:
    """Simple graph on the components of a state, vertices in component-id order."""

    ids: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def vertex_count(self) -> int:
        return len(self.ids)

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for i, c in enumerate(self.ids):
            lines.append(f'  {i} [label="{c}"];')
        for u, v in self.edges:
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _as_mask(ts: TransitionSystem, s) -> int:
    if isinstance(s, State):
        if len(s) != ts.site_count:
            raise StateError(f"state has {len(s)} choices, system has {ts.site_count} sites")
        return s.mask
    if not 0 <= s < (1 << ts.site_count):
        raise StateError(f"mask {s} out of range for {ts.site_count} sites")
    return s


def _labels(arc: Sequence[int], n: int, mask: int) -> tuple[list[int], int]:
    """Component label (its smallest end) per end, and the number of traced components."""
    m = 4 * n
    lab = [-1] * m
    count = 0
    for start in range(m):
        if lab[start] >= 0:
            continue
        count += 1
        j = start
        while lab[j] < 0:
            lab[j] = start
            k = j ^ 2 if (mask >> (j >> 2)) & 1 else j ^ 3
            lab[k] = start
            j = arc[k]
    return lab, count


def trace(ts: TransitionSystem, s) -> ComponentTrace:
    mask = _as_mask(ts, s)
    lab, count = _labels(ts.arc, ts.site_count, mask)
    pairs = tuple(
        (lab[4 * i], lab[4 * i + 1], bool((mask >> i) & 1)) for i in range(ts.site_count)
    )
    return ComponentTrace(tuple(lab), count + ts.free_loops, pairs)


def norm(ts: TransitionSystem, s) -> int:
    """‖S‖: the number of components of the state."""
    mask = _as_mask(ts, s)
    return _labels(ts.arc, ts.site_count, mask)[1] + ts.free_loops


def is_colorable(ts: TransitionSystem, s) -> bool:
    mask = _as_mask(ts, s)
    lab, _ = _labels(ts.arc, ts.site_count, mask)
    return all(lab[4 * i] != lab[4 * i + 1] for i in range(ts.site_count))


def _graph_from_labels(lab: list[int], n: int, free_loops: int) -> ComponentGraph:
    ids = sorted(set(lab))
    index = {c: i for i, c in enumerate(ids)}
    edges = set()
    for i in range(n):
        u, v = index[lab[4 * i]], index[lab[4 * i + 1]]
        edges.add((min(u, v), max(u, v)))
    loop_ids = tuple(-(k + 1) for k in range(free_loops))
    return ComponentGraph(tuple(ids) + loop_ids, tuple(sorted(edges)))


def component_graph(ts: TransitionSystem, s) -> ComponentGraph:
    mask = _as_mask(ts, s)
    lab, _ = _labels(ts.arc, ts.site_count, mask)
    if any(lab[4 * i] == lab[4 * i + 1] for i in range(ts.site_count)):
        raise StateError("component graph is defined only for colorable states")
    return _graph_from_labels(lab, ts.site_count, ts.free_loops)


def _scan(arc: tuple[int, ...], n: int, free_loops: int, lo: int, hi: int) -> list[tuple[int, ComponentGraph]]:
    out = []
    sites = range(n)
    for mask in range(lo, hi):
        lab, _ = _labels(arc, n, mask)
        if all(lab[4 * i] != lab[4 * i + 1] for i in sites):
            out.append((mask, _graph_from_labels(lab, n, free_loops)))
    return out


def _scan_args(args):
    return _scan(*args)


def check_budget(n: int, budget: int | None, flag: str = "--budget-states"):
    limit = DEFAULT_STATE_BUDGET if budget is None else budget
    if n > limit:
        raise BudgetExceeded(f"{n} sites exceed the state budget of {limit}", flag)


def enumerate_colorable(ts: TransitionSystem, budget: int | None = None, workers: int = 1) -> Iterator[tuple[State, ComponentGraph]]:
    """Every colorable state with its component graph, in increasing mask order."""
    n = ts.site_count
    check_budget(n, budget)
    total = 1 << n
    if workers <= 1 or total < 1024:
        chunk = 1 << 12
        for lo in range(0, total, chunk):
            for mask, cg in _scan(ts.arc, n, ts.free_loops, lo, min(total, lo + chunk)):
                yield State.from_mask(mask, n), cg
        return
    parts = workers * 4
    step = -(-total // parts)
    jobs = [(ts.arc, n, ts.free_loops, lo, min(total, lo + step)) for lo in range(0, total, step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for chunk in pool.map(_scan_args, jobs):
            for mask, cg in chunk:
                yield State.from_mask(mask, n), cg


def is_local_max(ts: TransitionSystem, s) -> bool:
    mask = _as_mask(ts, s)
    here = norm(ts, mask)
    return all(norm(ts, mask ^ (1 << i)) < here for i in range(ts.site_count))


def smoothing_distance(s1: State, s2: State) -> int:
    if len(s1) != len(s2):
        raise StateError("states of different lengths")
    return sum(a != b for a, b in zip(s1.choices, s2.choices))


@dataclass(frozen=True)
class BoundReport:
    count: int
    bound: int
    equality: bool


def colorable_count_bound_check(ts: TransitionSystem, budget: int | None = None) -> BoundReport:
    n = ts.site_count
    if n < 1:
        raise StateError("the bound needs at least one site")
    count = sum(1 for _ in enumerate_colorable(ts, budget))
    bound = 1 << (n - 1)
    return BoundReport(count, bound, count == bound)


def gf2_rank(rows: list[int]) -> int:
    rank = 0
    rows = [r for r in rows if r]
    while rows:
        pivot = rows.pop()
        if not pivot:
            continue
        rank += 1
        low = pivot & -pivot
        rows = [r ^ pivot if r & low else r for r in rows]
        rows = [r for r in rows if r]
    return rank


def gf2_component_count(dual_tait: Multigraph, kept_edges) -> int:
    """Nullity over GF(2) of the Laplacian of the spanning subgraph on ``kept_edges`` (edge indices)."""
    v = dual_tait.vertex_count
    rows = [0] * v
    for idx in kept_edges:
        a, b = dual_tait.edges[idx]
        if a == b:
            continue
        rows[a] ^= (1 << a) | (1 << b)
        rows[b] ^= (1 << a) | (1 << b)
    return v - gf2_rank(rows)
