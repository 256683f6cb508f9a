"""Exhaustive search over small diagrams for torus examples with given state data."""
import sys
from itertools import product

sys.path.insert(0, "src")
from pkpoly import diagram as D, pk, states as S  # noqa: E402


def matchings(items):
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for m in matchings(rest):
            yield [(a, items[i])] + m


def profile(d):
    ts = S.TransitionSystem.from_diagram(d)
    return [(st.choices, cg.vertex_count, cg.edges) for st, cg in S.enumerate_colorable(ts)]


def search(n, want):
    for m in matchings(list(range(4 * n))):
        if any(a // 4 == b // 4 for a, b in m):
            continue
        arc = [0] * (4 * n)
        for a, b in m:
            arc[a], arc[b] = b, a
        base = D.LinkDiagram(tuple(arc), (0,) * n)
        if want == "vbrings" and D.link_component_count(base) != 3:
            continue
        if want == "cube" and D.link_component_count(base) != 2:
            continue
        if not base.is_connected() or D.genus(base) != 1:
            continue
        for over in product((0, 1), repeat=n):
            d = D.LinkDiagram(tuple(arc), over)
            prof = profile(d)
            p = pk.pk_polynomial(d).polynomial.coeffs
            if want == "cube" and len(prof) == 2 and all(v == 3 and len(e) == 2 for _, v, e in prof) \
                    and p == (0, 2, -4, 2):
                return d, prof
            if want == "vbrings" and len(prof) == 3 and p == (0, 0, -1, 1) \
                    and any(all(c) and v == 3 for c, v, _ in prof):
                return d, prof
    return None


for want, n in [("cube", 3), ("vbrings", 3), ("vbrings", 4)]:
    res = search(n, want)
    print(want, n, res and res[1])
    if res:
        print(res[0].to_lkd())
