"""Exact integer polynomials, chromatic polynomials and falling-factorial transforms."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence


class PolynomialError(ValueError):
    pass


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class IntPolynomial:
    """Univariate polynomial in q with integer coefficients, ascending powers.

    The zero polynomial has an empty coefficient tuple.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def q(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def falling(cls, m: int) -> "IntPolynomial":
        """(q)_m = q(q-1)...(q-m+1)."""
        p = cls((1,))
        for j in range(m):
            p = p * cls((-j, 1))
        return p

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        return _coerce(other) - self

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        out = IntPolynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c: int) -> "IntPolynomial":
        return IntPolynomial(c * a for a in self.coeffs)

    def exact_divide_by_q(self) -> "IntPolynomial":
        if self.coeff(0) != 0:
            raise PolynomialError(f"constant term {self.coeff(0)} is nonzero; not divisible by q")
        return IntPolynomial(self.coeffs[1:])

    def exact_divide_by_int(self, d: int) -> "IntPolynomial":
        if d == 0 or any(c % d for c in self.coeffs):
            raise PolynomialError(f"coefficients not divisible by {d}")
        return IntPolynomial(c // d for c in self.coeffs)

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def to_line(self) -> str:
        """Serialise as ``poly c0 c1 ... cd``."""
        return " ".join(["poly"] + [str(c) for c in self.coeffs])

    @classmethod
    def from_line(cls, line: str) -> "IntPolynomial":
        parts = line.split()
        if not parts or parts[0] != "poly":
            raise PolynomialError(f"not a poly line: {line!r}")
        try:
            return cls(int(t) for t in parts[1:])
        except ValueError as exc:
            raise PolynomialError(str(exc)) from None

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "q" if k == 1 else f"q^{k}"
                body = mono if a == 1 else f"{a}{mono}"
            terms.append((sign, body))
        head_sign, head = terms[0]
        s = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def _coerce(x) -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial((x,))
    raise TypeError(f"cannot use {type(x).__name__} as polynomial")


def evaluate(p: IntPolynomial, x: int) -> int:
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


# --- Stirling numbers -------------------------------------------------------


@lru_cache(maxsize=None)
def stirling_first(n: int, k: int) -> int:
    """Signed Stirling number of the first kind: (q)_n = sum_k s(n,k) q^k."""
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"stirling_first({n}, {k}) out of range")
    if n == k:
        return 1
    if k == 0:
        return 0
    return stirling_first(n - 1, k - 1) - (n - 1) * stirling_first(n - 1, k)


@lru_cache(maxsize=None)
def stirling_second(n: int, k: int) -> int:
    """Stirling number of the second kind: q^n = sum_k S(n,k) (q)_k."""
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"stirling_second({n}, {k}) out of range")
    if n == k:
        return 1
    if k == 0:
        return 0
    return stirling_second(n - 1, k - 1) + k * stirling_second(n - 1, k)


@dataclass(frozen=True)
class StirlingTable:
    """Tabulated Stirling numbers up to ``bound`` (inclusive)."""

    bound: int
    first: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    second: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "first", tuple(tuple(stirling_first(n, k) for k in range(n + 1)) for n in range(self.bound + 1))
        )
        object.__setattr__(
            self, "second", tuple(tuple(stirling_second(n, k) for k in range(n + 1)) for n in range(self.bound + 1))
        )


# --- falling factorial basis -----------------------------------------------


@dataclass(frozen=True)
class FallingFactorialForm:
    """P(q) = sum_m e[m] (q)_m; c[m] = m! e[m] is derived."""

    e: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "e", _trim(self.e))

    @property
    def c(self) -> tuple[int, ...]:
        return tuple(factorial(m) * em for m, em in enumerate(self.e))

    @classmethod
    def from_c(cls, c: Sequence[int]) -> "FallingFactorialForm":
        e = []
        for m, cm in enumerate(c):
            f = factorial(m)
            if cm % f:
                raise PolynomialError(f"c_{m} = {cm} is not divisible by {m}!")
            e.append(cm // f)
        return cls(tuple(e))


def to_falling_factorial(p: IntPolynomial) -> FallingFactorialForm:
    """Change of basis by repeated synthetic division by (q - m), m = 0, 1, ..."""
    rest = list(p.coeffs)
    e = []
    m = 0
    while rest:
        # divide rest by (q - m): remainder is rest(m)
        quotient = [0] * (len(rest) - 1)
        carry = 0
        for k in range(len(rest) - 1, -1, -1):
            carry = carry * m + rest[k]
            if k > 0:
                quotient[k - 1] = carry
        e.append(carry)
        rest = list(_trim(quotient))
        m += 1
    return FallingFactorialForm(tuple(e))


def from_falling_factorial(f: FallingFactorialForm) -> IntPolynomial:
    out = IntPolynomial()
    for m, em in enumerate(f.e):
        if em:
            out = out + IntPolynomial.falling(m).scale(em)
    return out


def coefficients_from_cm(f: FallingFactorialForm) -> IntPolynomial:
    """a_k = sum_m s(m,k) c_m / m!."""
    c = f.c
    if not c:
        return IntPolynomial()
    d = len(c) - 1
    coeffs = []
    for k in range(d + 1):
        total = 0
        for m in range(k, d + 1):
            q, r = divmod(c[m] * stirling_first(m, k), factorial(m))
            if r:
                raise PolynomialError(f"c_{m} s({m},{k}) not divisible by {m}!")
            total += q
        coeffs.append(total)
    return IntPolynomial(coeffs)


def linear_coefficient_from_cm(c: Sequence[int]) -> int:
    """a_1 = sum_m (-1)^(m-1) c_m / m."""
    total = 0
    for m in range(1, len(c)):
        q, r = divmod(c[m], m)
        if r:
            raise PolynomialError(f"c_{m} not divisible by {m}")
        total += (-1) ** (m - 1) * q
    return total


def penultimate_coefficient(e: Sequence[int]) -> int:
    """a_{d-1} = -d(d-1)/2 e_d + e_{d-1}."""
    d = len(e) - 1
    if d < 1:
        return 0
    return -(d * (d - 1) // 2) * e[d] + e[d - 1]


def antepenultimate_coefficient(e: Sequence[int]) -> int:
    """a_{d-2} from e_d, e_{d-1}, e_{d-2}."""
    d = len(e) - 1
    if d < 2:
        return 0
    return (
        d * (d - 1) * (d - 2) * (3 * d - 1) // 24 * e[d]
        - (d - 1) * (d - 2) // 2 * e[d - 1]
        + e[d - 2]
    )


def em_from_evaluations(p: IntPolynomial, m: int) -> int:
    """e_m = (1/m!) sum_j (-1)^j C(m, m-j) P(m-j), by inclusion-exclusion."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    total = sum((-1) ** j * comb(m, m - j) * evaluate(p, m - j) for j in range(m + 1))
    q, r = divmod(total, factorial(m))
    if r:
        raise PolynomialError(f"inclusion-exclusion sum {total} not divisible by {m}!")
    return q


def eval_negative_identity(f: FallingFactorialForm, n: int) -> int:
    """P(-n) = sum_m (-1)^m C(n+m-1, m) c_m."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return sum((-1) ** m * comb(n + m - 1, m) * cm for m, cm in enumerate(f.c))


# --- chromatic polynomials --------------------------------------------------


class SimpleGraphError(ValueError):
    pass


def _canonical_key(n: int, edges: frozenset[tuple[int, int]]) -> tuple:
    """Relabel vertices by refined degree colour (ties broken by old label).

    The key is the relabelled edge set, so equal keys always mean identical
    graphs; isomorphic graphs usually, but not always, share a key.
    """
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    colour = [len(a) for a in adj]
    for _ in range(n):
        sig = [(colour[v], tuple(sorted(colour[w] for w in adj[v]))) for v in range(n)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colour)):
            colour = new
            break
        colour = new
    order = sorted(range(n), key=lambda v: (colour[v], v))
    pos = {v: i for i, v in enumerate(order)}
    return (n, tuple(sorted(tuple(sorted((pos[u], pos[v]))) for u, v in edges)))


class ChromaticCache:
    """Memo table for connected-component chromatic polynomials.

    Reads are lock-free; writes take a lock. Results never depend on the
    cache contents.
    """

    def __init__(self):
        self._table: dict[tuple, IntPolynomial] = {}
        self._lock = threading.Lock()

    def get(self, key):
        return self._table.get(key)

    def put(self, key, value: IntPolynomial):
        with self._lock:
            self._table.setdefault(key, value)

    def __len__(self):
        return len(self._table)


_DEFAULT_CACHE = ChromaticCache()


def chromatic(
    vertex_count: int,
    edges: Iterable[tuple[int, int]],
    cache: ChromaticCache | None = None,
) -> IntPolynomial:
    """Chromatic polynomial of a simple graph on vertices 0..vertex_count-1."""
    es = set()
    for u, v in edges:
        if u == v:
            raise SimpleGraphError(f"loop at vertex {u}")
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise SimpleGraphError(f"edge ({u}, {v}) out of range")
        e = (u, v) if u < v else (v, u)
        if e in es:
            raise SimpleGraphError(f"parallel edge {e}")
        es.add(e)
    cache = _DEFAULT_CACHE if cache is None else cache
    return _chromatic_graph(vertex_count, frozenset(es), cache)


def _components(n: int, edges) -> list[list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def _chromatic_graph(n: int, edges: frozenset, cache: ChromaticCache) -> IntPolynomial:
    result = IntPolynomial((1,))
    for comp in _components(n, edges):
        idx = {v: i for i, v in enumerate(comp)}
        sub = frozenset(
            (min(idx[u], idx[v]), max(idx[u], idx[v])) for u, v in edges if u in idx
        )
        result = result * _chromatic_connected(len(comp), sub, cache)
    return result


def _chromatic_connected(n: int, edges: frozenset, cache: ChromaticCache) -> IntPolynomial:
    m = len(edges)
    if m == n - 1:
        # tree
        return IntPolynomial((0, 1)) * IntPolynomial((-1, 1)) ** m
    if m == n * (n - 1) // 2:
        return IntPolynomial.falling(n)
    if m == n:
        degs = [0] * n
        for u, v in edges:
            degs[u] += 1
            degs[v] += 1
        if all(d == 2 for d in degs):
            # cycle: (q-1)^n + (-1)^n (q-1)
            return IntPolynomial((-1, 1)) ** n + IntPolynomial((-1, 1)).scale((-1) ** n)
    key = _canonical_key(n, edges)
    hit = cache.get(key)
    if hit is not None:
        return hit
    # delete-contract on an edge at a maximum-degree vertex
    degs = [0] * n
    for u, v in edges:
        degs[u] += 1
        degs[v] += 1
    hub = max(range(n), key=lambda x: (degs[x], -x))
    u, v = min(e for e in edges if hub in e)
    deleted = edges - {(u, v)}
    contracted = set()
    for a, b in deleted:
        a = u if a == v else a
        b = u if b == v else b
        if a == b:
            continue
        a, b = (a, b) if a < b else (b, a)
        contracted.add((a, b))
    relabel = {x: (x if x < v else x - 1) for x in range(n) if x != v}
    contracted_r = frozenset(
        (min(relabel[a], relabel[b]), max(relabel[a], relabel[b])) for a, b in contracted
    )
    value = _chromatic_graph(n, frozenset(deleted), cache) - _chromatic_graph(n - 1, contracted_r, cache)
    cache.put(key, value)
    return value
