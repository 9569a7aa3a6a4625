"""Seeded graph corpora shared by the test modules."""

import random

from hyperfin import generators as gen
from hyperfin.graph import Graph, disjoint_union


def small_corpus(count: int = 200, seed: int = 7, d: int = 4, max_n: int = 64) -> list:
    """Mixed families, all re-bounded to degree ``d`` and at most ``max_n`` vertices."""
    rnd = random.Random(seed)
    out = []
    while len(out) < count:
        kind = rnd.randrange(8)
        if kind == 0:
            G = gen.cycle(rnd.randint(3, max_n))
        elif kind == 1:
            G = gen.path(rnd.randint(1, max_n))
        elif kind == 2:
            w = rnd.randint(1, 8)
            G = gen.grid(w, rnd.randint(1, max_n // w))
        elif kind == 3:
            G = gen.torus(rnd.randint(3, 8), rnd.randint(3, 8))
        elif kind == 4:
            n = rnd.randrange(6, max_n + 1, 2)
            G = gen.random_regular(n, 3, rnd.randrange(1 << 30))
        elif kind == 5:
            G = gen.leafed_line(rnd.randint(0, max_n // 3 - 1))
        elif kind == 6:
            base = gen.grid(rnd.randint(3, 7), rnd.randint(3, 7))
            G = gen.rewire(base, rnd.randint(1, 4), rnd.randrange(1 << 30))
        else:
            a = gen.cycle(rnd.randint(3, max_n // 2))
            b = gen.path(rnd.randint(1, max_n - a.n))
            G = disjoint_union(a, b)
        if G.n <= max_n:
            out.append(G.with_degree_bound(d))
    return out


def random_graph(rnd: random.Random, n: int, d: int, p: float) -> Graph:
    """Erdos-Renyi-style graph with edges dropped once an endpoint is full."""
    deg = [0] * n
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rnd.random() < p and deg[u] < d and deg[v] < d:
                edges.append((u, v))
                deg[u] += 1
                deg[v] += 1
    return Graph.from_edges(n, edges, d)
