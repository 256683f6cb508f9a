"""Search for a genus-1 Petersen rotation and nontrivial flype sites; print literals."""
import itertools
import random
import sys

import networkx as nx

sys.path.insert(0, "src")
from pkpoly import diagram as D, pk, surface  # noqa: E402
from pkpoly.surface import EmbeddedGraph  # noqa: E402

# Petersen: outer cycle 0-4, spokes i-(i+5), inner pentagram
pedges = [(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)] + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
dart = {}
for k, (u, v) in enumerate(pedges):
    dart[(u, v)] = 2 * k
    dart[(v, u)] = 2 * k + 1
nbrs = {v: [w for (u, w) in dart if u == v] for v in range(10)}
for flips in itertools.product((0, 1), repeat=10):
    cycles = []
    for v in range(10):
        a, b, c = (dart[(v, w)] for w in nbrs[v])
        cycles.append((a, b, c) if not flips[v] else (a, c, b))
    g = EmbeddedGraph.from_vertex_cycles(cycles, [(2 * k, 2 * k + 1) for k in range(15)])
    if surface.genus(g) == 1:
        print("petersen cycles", cycles)
        print("spokes", [(dart[(i, i + 5)], dart[(i + 5, i)]) for i in range(5)])
        break


def embed(G):
    ok, emb = nx.check_planarity(G)
    darts = {}
    edges = []
    for k, (u, v) in enumerate(G.edges()):
        darts[(u, v)], darts[(v, u)] = 2 * k, 2 * k + 1
        edges.append((2 * k, 2 * k + 1))
    cycles = [tuple(darts[(u, w)] for w in list(emb.neighbors_cw_order(u))[::-1]) for u in G.nodes()]
    return EmbeddedGraph.from_vertex_cycles(cycles, edges)


rng = random.Random(5)
found = 0
while found < 3:
    G = nx.gnm_random_graph(rng.randint(4, 6), rng.randint(6, 7), seed=rng.randint(0, 10**9))
    if not nx.is_connected(G) or min(dict(G.degree()).values()) < 2 or not nx.check_planarity(G)[0]:
        continue
    d = D.medial(embed(G))
    if not D.is_reduced(d) or not D.is_prime(d):
        continue
    hit = None
    for piv in range(d.crossing_count):
        others = [i for i in range(d.crossing_count) if i != piv]
        for k in range(1, d.crossing_count - 1):
            for T in itertools.combinations(others, k):
                try:
                    out = D.apply_flype(d, piv, T)
                except D.DiagramError:
                    continue
                if not D.diagrams_isomorphic(d, out):
                    hit = (piv, T)
                    break
            if hit:
                break
        if hit:
            break
    if hit:
        found += 1
        print("flype", hit, pk.pk_polynomial(d).polynomial.to_line())
        print(d.to_lkd())
