"""Graph families: hyperfinite exemplars (cycles, grids, tori, boxes,
leafed lines) and random regular graphs as the expander control."""

from __future__ import annotations

from .graph import Graph, GraphError, disjoint_union
from . import seeds


class SizeTooSmall(GraphError):
    pass


class GenerationFailed(GraphError):
    pass


def path(n: int) -> Graph:
    if n < 1:
        raise SizeTooSmall(f"path needs n >= 1, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], 2)


def cycle(n: int) -> Graph:
    if n < 3:
        raise SizeTooSmall(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], 2)


def grid(w: int, h: int) -> Graph:
    """``w x h`` grid; vertex ``(x, y)`` has id ``y * w + x``."""
    if w < 1 or h < 1:
        raise SizeTooSmall(f"grid needs w, h >= 1, got {w}x{h}")
    edges = []
    for y in range(h):
        for x in range(w):
            v = y * w + x
            if x + 1 < w:
                edges.append((v, v + 1))
            if y + 1 < h:
                edges.append((v, v + w))
    return Graph.from_edges(w * h, edges, 4)


def torus(w: int, h: int) -> Graph:
    # w or h == 2 would produce parallel edges; 3 is the smallest simple case
    if w < 3 or h < 3:
        raise SizeTooSmall(f"torus needs w, h >= 3, got {w}x{h}")
    edges = []
    for y in range(h):
        for x in range(w):
            v = y * w + x
            edges.append((v, y * w + (x + 1) % w))
            edges.append((v, ((y + 1) % h) * w + x))
    return Graph.from_edges(w * h, edges, 4)


def folner_box(k: int) -> Graph:
    """The ``k x k`` box of the Cayley graph of Z^2."""
    return grid(k, k)


def leafed_line(n: int) -> Graph:
    """Line with ``n`` edges (``n+1`` spine vertices), two leaves per spine vertex.

    Spine vertices are ``0..n``; the leaves of spine vertex ``i`` are
    ``n+1+2i`` and ``n+2+2i``.
    """
    if n < 0:
        raise SizeTooSmall(f"leafed_line needs n >= 0, got {n}")
    spine = n + 1
    edges = [(i, i + 1) for i in range(n)]
    for i in range(spine):
        edges.append((i, spine + 2 * i))
        edges.append((i, spine + 2 * i + 1))
    return Graph.from_edges(3 * spine, edges, 4)


def disjoint_copies(G: Graph, k: int) -> Graph:
    return disjoint_union(*([G] * k))


MAX_RESAMPLES = 1000


def random_regular(n: int, d: int, seed: int) -> Graph:
    """Simple ``d``-regular graph from the pairing model, resampling on
    loops or multi-edges; deterministic in ``seed``."""
    if (n * d) % 2 or n <= d:
        raise GraphError(f"need n*d even and n > d, got n={n}, d={d}")
    r = seeds.rng(seed, "random_regular", n, d)
    points = [v for v in range(n) for _ in range(d)]
    for _ in range(MAX_RESAMPLES):
        r.shuffle(points)
        seen = set()
        ok = True
        for i in range(0, len(points), 2):
            u, v = points[i], points[i + 1]
            if u == v:
                ok = False
                break
            e = (u, v) if u < v else (v, u)
            if e in seen:
                ok = False
                break
            seen.add(e)
        if ok:
            return Graph.from_edges(n, sorted(seen), d)
    raise GenerationFailed(f"no simple pairing after {MAX_RESAMPLES} resamples")


def rewire(G: Graph, k: int, seed: int) -> Graph:
    """Apply ``k`` degree-preserving double-edge swaps (ab, cd -> ac, bd)."""
    r = seeds.rng(seed, "rewire", k)
    edges = set(G.edges())
    done = 0
    attempts = 0
    while done < k:
        attempts += 1
        if attempts > 10000 * max(k, 1):
            raise GenerationFailed("could not find valid swaps")
        (a, b), (c, e) = r.sample(sorted(edges), 2)
        if r.random() < 0.5:
            c, e = e, c
        if len({a, b, c, e}) < 4:
            continue
        new1 = (min(a, c), max(a, c))
        new2 = (min(b, e), max(b, e))
        if new1 in edges or new2 in edges:
            continue
        edges -= {(min(a, b), max(a, b)), (min(c, e), max(c, e))}
        edges |= {new1, new2}
        done += 1
    return Graph.from_edges(G.n, sorted(edges), G.d)


FAMILIES = {
    "path": (path, ["n"]),
    "cycle": (cycle, ["n"]),
    "grid": (grid, ["w", "h"]),
    "torus": (torus, ["w", "h"]),
    "folner_box": (folner_box, ["k"]),
    "leafed_line": (leafed_line, ["n"]),
    "random_regular": (random_regular, ["n", "d"]),
}
