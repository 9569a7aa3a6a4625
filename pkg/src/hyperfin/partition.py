"""(eps, K)-partitions by isoperimetric peeling.

Repeatedly peel the candidate set with the smallest isoperimetric constant
i(F) = |boundary edges of F| / |F| (measured in the remaining graph), as long
as it is below ``eps``.  Candidates are the prefixes (sizes 1..K) of a BFS
ordering grown from each remaining vertex.  Ties go to the smaller set, then
the smaller minimum vertex id, then the lexicographically smaller set.

``Infeasible`` only means no candidate of this family qualified; it is not a
certificate of non-hyperfiniteness.
"""

from __future__ import annotations

import hashlib
import heapq
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import EdgeSet, Graph, GraphError, components, norm_edge, remove_edges
from . import seeds


class Infeasible(GraphError):
    def __init__(self, residual: int, peel_log, eps, K):
        super().__init__(f"no candidate with i(F) < {eps} and |F| <= {K}; {residual} vertices left")
        self.residual = residual
        self.peel_log = peel_log
        self.eps = eps
        self.K = K


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        # 0.4 means 2/5, not the nearest binary double
        return Fraction(repr(x))
    return Fraction(x)


@dataclass
class Partition:
    cut: EdgeSet
    K: int
    n: int
    m: int
    peel_log: list = field(default_factory=list)  # [(tuple F, Fraction i(F))]

    @property
    def removed_fraction_edges(self) -> Fraction:
        return Fraction(len(self.cut), self.m) if self.m else Fraction(0)

    @property
    def removed_fraction_vertex_normalized(self) -> Fraction:
        return Fraction(len(self.cut), self.n) if self.n else Fraction(0)

    def digest(self) -> str:
        h = hashlib.sha256()
        for F, i in self.peel_log:
            h.update(f"{','.join(map(str, F))}:{i};".encode())
        return h.hexdigest()


def iso_constant(G: Graph, F) -> Fraction:
    F = set(F)
    if not F:
        raise GraphError("isoperimetric constant of the empty set")
    out = sum(1 for x in F for y in G.adj[x] if y not in F)
    return Fraction(out, len(F))


class _Peeler:
    def __init__(self, G: Graph, eps: Fraction, K: int, seed: int):
        self.G = G
        self.eps = eps
        self.K = K
        r = seeds.rng(seed, "bfs-order")
        prio = list(range(G.n))
        r.shuffle(prio)
        self.prio = prio
        self.alive = [True] * G.n
        self.deg = [len(nb) for nb in G.adj]
        self.touched: dict[int, set] = {}
        self.touched_by: dict[int, set] = {}
        self.version = [0] * G.n
        self.heap: list = []

    def candidate(self, v):
        """Best qualifying BFS prefix grown from ``v`` and the vertex set it read."""
        G, alive, prio, K = self.G, self.alive, self.prio, self.K
        order = [v]
        seen = {v}
        queue = deque([v])
        while queue and len(order) < K:
            x = queue.popleft()
            nbrs = sorted((y for y in G.adj[x] if alive[y] and y not in seen), key=prio.__getitem__)
            for y in nbrs:
                seen.add(y)
                order.append(y)
                queue.append(y)
                if len(order) == K:
                    break
        touched = set(order)
        inF = set()
        boundary = 0
        best = None
        eps = self.eps
        for size, u in enumerate(order, 1):
            inside = 0
            for y in G.adj[u]:
                if alive[y]:
                    touched.add(y)
                    if y in inF:
                        inside += 1
            boundary += self.deg[u] - 2 * inside
            inF.add(u)
            # i = boundary/size < eps, compared exactly
            if boundary < eps * size:
                i = Fraction(boundary, size)
                if best is None or i < best[0]:
                    best = (i, size, min(order[:size]), tuple(sorted(order[:size])))
        return best, touched

    def refresh(self, v):
        for u in self.touched.pop(v, ()):
            self.touched_by.get(u, set()).discard(v)
        self.version[v] += 1
        if not self.alive[v]:
            return
        best, touched = self.candidate(v)
        self.touched[v] = touched
        for u in touched:
            self.touched_by.setdefault(u, set()).add(v)
        if best is not None:
            heapq.heappush(self.heap, (best, self.version[v], v))

    def run(self) -> Partition:
        G = self.G
        for v in range(G.n):
            self.refresh(v)
        cut = []
        log = []
        remaining = G.n
        while remaining:
            while self.heap:
                best, ver, v = self.heap[0]
                if ver == self.version[v] and self.alive[v]:
                    break
                heapq.heappop(self.heap)
            else:
                raise Infeasible(remaining, log, self.eps, self.K)
            i, _, _, F = best
            Fs = set(F)
            for x in F:
                for y in G.adj[x]:
                    if self.alive[y] and y not in Fs:
                        cut.append(norm_edge(x, y))
                        self.deg[y] -= 1
            for x in F:
                self.alive[x] = False
            remaining -= len(F)
            log.append((F, i))
            stale = set()
            for x in F:
                stale |= self.touched_by.pop(x, set())
            for w in sorted(stale | Fs):
                self.refresh(w)
        return Partition(EdgeSet.of(cut), self.K, G.n, G.m, log)


def iso_peel(G: Graph, eps, K: int, seed: int = 0) -> Partition:
    eps = as_fraction(eps)
    if not (0 < eps <= G.d):
        raise ValueError(f"eps must be in (0, d], got {eps}")
    if K < 1:
        raise ValueError("K must be >= 1")
    return _Peeler(G, eps, K, seed).run()


def verify_partition(G: Graph, P: Partition) -> dict:
    """Recompute the partition's claims from the cut alone."""
    P.cut.check_in(G)
    comps = components(remove_edges(G, P.cut))
    sizes = [len(c) for c in comps]
    worst = max(sizes, default=0)
    return {
        "ok": worst <= P.K,
        "worst_component": worst,
        "K": P.K,
        "cut_size": len(P.cut),
        "removed_fraction_edges": Fraction(len(P.cut), G.m) if G.m else Fraction(0),
        "removed_fraction_vertex_normalized": Fraction(len(P.cut), G.n) if G.n else Fraction(0),
        "size_histogram": dict(sorted(Counter(sizes).items())),
    }


def replay_peel_log(G: Graph, peel_log, eps, K: int) -> EdgeSet:
    """Check a peel log as a certificate at ``(eps, K)`` and return its cut.

    Every peeled set must be alive, of size <= K, and have the recorded
    i(F) < eps in the graph remaining at that step; the log must exhaust G.
    """
    eps = as_fraction(eps)
    alive = [True] * G.n
    cut = []
    for F, i in peel_log:
        Fs = set(F)
        if len(Fs) > K or not Fs:
            raise GraphError(f"peeled set of size {len(Fs)} exceeds K={K}")
        if not all(alive[x] for x in Fs):
            raise GraphError("peeled set reuses a removed vertex")
        out = [(x, y) for x in Fs for y in G.adj[x] if alive[y] and y not in Fs]
        actual = Fraction(len(out), len(Fs))
        if actual != i or not actual < eps:
            raise GraphError(f"recorded i(F)={i}, replayed {actual}, eps={eps}")
        cut.extend(out)
        for x in Fs:
            alive[x] = False
    if any(alive):
        raise GraphError("peel log does not cover the graph")
    return EdgeSet.of(cut)


@dataclass
class ProfileRow:
    eps: Fraction
    K: int | None  # None: infeasible within budget
    removed_fraction_edges: Fraction | None
    removed_fraction_vertex_normalized: Fraction | None
    tried: dict  # K -> bool


def _least_K(G, eps, K_budget, seed):
    tried = {}
    results = {}

    def ok(K):
        if K not in tried:
            try:
                results[K] = iso_peel(G, eps, K, seed)
                tried[K] = True
            except Infeasible:
                tried[K] = False
        return tried[K]

    lo, hi = 0, None  # lo: largest known failure, hi: smallest known success
    K = 1
    while True:
        K = min(K, K_budget)
        if ok(K):
            hi = K
            break
        lo = K
        if K == K_budget:
            break
        K *= 2
    if hi is None:
        return None, tried, None
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi, tried, results[hi]


def hyperfiniteness_profile(G: Graph, eps_grid, K_budget: int, seed: int = 0) -> list:
    """For each eps, the least K <= K_budget (doubling, then bisection) at
    which peeling succeeds."""
    if not eps_grid:
        raise ValueError("eps_grid must be non-empty")
    rows = []
    for eps in eps_grid:
        eps = as_fraction(eps)
        K, tried, P = _least_K(G, eps, K_budget, seed)
        rows.append(ProfileRow(
            eps, K,
            None if P is None else P.removed_fraction_edges,
            None if P is None else P.removed_fraction_vertex_normalized,
            dict(sorted(tried.items())),
        ))
    return rows
