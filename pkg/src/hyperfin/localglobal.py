"""k-labelling statistics clouds, their Hausdorff distance d_k and the
truncated local-global distance d_LG.

The cloud C_k(G) (one point per labelling c: V -> {1..k}) is exponentially
large, so it is approximated by uniform random labellings plus labellings
pushed outward by hill-climbing.  Every value computed from a cloud is an
estimate and carries the cloud's generation log.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import seeds
from .balls import canonical_key, decode_key, extract_ball
from .graph import Graph, GraphError, bfs_distances


MAX_BLOCK = 8


class LabelOutOfRange(GraphError):
    pass


class ShapeMismatch(GraphError):
    pass


@dataclass
class LabeledBallDistribution:
    r: int
    k: int
    probs: dict  # labelled ball key -> Fraction

    def total(self) -> Fraction:
        return sum(self.probs.values(), Fraction(0))


@dataclass
class LabelingCloud:
    r: int
    k: int
    points: list  # LabeledBallDistribution, sorted by key
    labelings: list  # the labelling behind each point, same order
    log: dict = field(default_factory=dict)


def _check_labels(G: Graph, c, k):
    if len(c) != G.n:
        raise LabelOutOfRange(f"labelling has {len(c)} entries for {G.n} vertices")
    for v, x in enumerate(c):
        if not (isinstance(x, int) and 1 <= x <= k):
            raise LabelOutOfRange(f"label {x!r} at vertex {v} not in 1..{k}")


def labeling_distribution(G: Graph, c, r: int, k: int | None = None) -> LabeledBallDistribution:
    c = tuple(c)
    if k is None:
        k = max(c, default=1)
    _check_labels(G, c, k)
    if G.n == 0:
        raise GraphError("empty graph has no ball statistics")
    counts = Counter(canonical_key(extract_ball(G, v, r, c)) for v in range(G.n))
    return LabeledBallDistribution(r, k, {key: Fraction(x, G.n) for key, x in counts.items()})


def monochromatic_mass(dist: LabeledBallDistribution) -> Fraction:
    """Mass of balls that contain an edge whose endpoints share a label."""
    total = Fraction(0)
    for key, p in dist.probs.items():
        info = decode_key(key)
        lab = info["labels"]
        if any(lab[a] == lab[b] for a, b in info["edges"]):
            total += p
    return total


def half_l1(p: dict, q: dict) -> Fraction:
    zero = Fraction(0)
    return sum((abs(p.get(x, zero) - q.get(x, zero)) for x in set(p) | set(q)), zero) / 2


class _Climber:
    """Single-vertex relabelling with incremental ball-key bookkeeping.

    Counts are kept as integers; distances to cloud points are integer L1
    sums (twice n times the half-L1 distance), so comparisons stay exact.
    """

    def __init__(self, G: Graph, r: int, k: int, c: list, targets: list, direction=None):
        self.G, self.r, self.k = G, r, k
        self.direction = direction
        self.c = list(c)
        self.keys = [self._key(v) for v in range(G.n)]
        self.counts = Counter(self.keys)
        self.targets = targets  # list of Counter (integer counts)
        self.l1 = [self._full_l1(t) for t in targets]

    def _key(self, v):
        return canonical_key(extract_ball(self.G, v, self.r, self.c))

    def _full_l1(self, t):
        return sum(abs(self.counts.get(x, 0) - t.get(x, 0)) for x in set(self.counts) | set(t))

    def score(self):
        if self.direction is not None:
            return (self.counts.get(self.direction, 0), 0)
        # farthest-point objective; total distance breaks plateaus
        return (min(self.l1), sum(self.l1)) if self.l1 else (0, 0)

    def move(self, changes: dict, affected):
        """Apply ``{vertex: label}``; ``affected`` must cover every vertex
        within distance r of a changed one.  Returns the undo record."""
        old = {v: self.c[v] for v in changes}
        for v, label in changes.items():
            self.c[v] = label
        delta = Counter()
        changed = []
        for u in affected:
            new = self._key(u)
            if new != self.keys[u]:
                delta[self.keys[u]] -= 1
                delta[new] += 1
                changed.append((u, self.keys[u]))
                self.keys[u] = new
        old_l1 = list(self.l1)
        for i, t in enumerate(self.targets):
            s = self.l1[i]
            for x, dx in delta.items():
                if dx:
                    before = self.counts.get(x, 0)
                    s += abs(before + dx - t.get(x, 0)) - abs(before - t.get(x, 0))
            self.l1[i] = s
        for x, dx in delta.items():
            self.counts[x] += dx
            if not self.counts[x]:
                del self.counts[x]
        return old, changed, delta, old_l1

    def undo(self, rec):
        old, changed, delta, old_l1 = rec
        for v, label in old.items():
            self.c[v] = label
        for u, key in changed:
            self.keys[u] = key
        for x, dx in delta.items():
            self.counts[x] -= dx
            if not self.counts[x]:
                del self.counts[x]
        self.l1 = old_l1


def _cluster(G: Graph, c, v, same: bool):
    """Component of ``v`` in the edges whose endpoint labels agree (``same``)
    or differ."""
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for y in G.adj[x]:
            if y not in seen and (c[x] == c[y]) == same:
                seen.add(y)
                stack.append(y)
    return sorted(seen)


def _halo(G: Graph, region, r):
    out = set(region)
    frontier = set(region)
    for _ in range(r):
        frontier = {y for x in frontier for y in G.adj[x]} - out
        out |= frontier
    return sorted(out)


def _to_point(G, c, r, k):
    return labeling_distribution(G, c, r, k)


def sample_cloud(G: Graph, k: int, r: int, n_random: int, n_optimized: int, seed: int = 0,
                 steps: int | None = None, max_block: int = MAX_BLOCK) -> LabelingCloud:
    """Random labellings plus hill-climbed ones.

    Each climb starts from a fresh random labelling and accepts non-worsening
    moves.  Even-numbered climbs maximise the smallest distance to the points
    already in the cloud (ties broken by the total distance); odd-numbered
    climbs maximise the mass of a single ball type, cycling through the sorted
    types seen so far, which reaches extreme points the farthest-point rule
    can miss.
    A move cyclically shifts the labels on one vertex, on a ball of radius
    <= ``max_block``, or on a cluster (the component of a vertex in the
    equal-label or in the unequal-label edges); the larger moves let domain
    walls annihilate.
    """
    if k < 1 or r < 0 or n_random < 0 or n_optimized < 0:
        raise ValueError("k >= 1, r >= 0 and non-negative budgets required")
    if steps is None:
        steps = 20 * G.n
    labelings = []
    if k == 1:
        labelings.append([1] * G.n)
    else:
        for i in range(n_random):
            rnd = seeds.rng(seed, "cloud", k, r, "random", i)
            labelings.append([rnd.randint(1, k) for _ in range(G.n)])
        for j in range(n_optimized):
            rnd = seeds.rng(seed, "cloud", k, r, "climb", j)
            start = [rnd.randint(1, k) for _ in range(G.n)]
            targets = [Counter({key: int(p * G.n) for key, p in _to_point(G, c, r, k).probs.items()})
                       for c in labelings]
            direction = None
            if j % 2:
                seen = sorted(set().union(*targets)) if targets else []
                direction = seen[(j // 2) % len(seen)] if seen else None
            climber = _Climber(G, r, k, start, targets, direction)
            best = climber.score()
            for _ in range(steps if G.n else 0):
                v = rnd.randrange(G.n)
                shift = rnd.randint(1, k - 1)
                kind = rnd.random()
                if kind < 0.5:
                    region = [v]
                elif kind < 0.75:
                    region = list(bfs_distances(G, v, rnd.randint(1, max_block)))
                else:
                    region = _cluster(G, climber.c, v, same=rnd.random() < 0.5)
                changes = {u: (climber.c[u] - 1 + shift) % k + 1 for u in region}
                rec = climber.move(changes, _halo(G, region, r))
                s = climber.score()
                if s >= best:
                    best = s
                else:
                    climber.undo(rec)
            labelings.append(list(climber.c))
    pts = [(_to_point(G, c, r, k), c) for c in labelings]
    pts.sort(key=lambda pc: sorted(pc[0].probs.items()))
    return LabelingCloud(
        r, k, [p for p, _ in pts], [c for _, c in pts],
        {"n_random": n_random, "n_optimized": n_optimized, "steps": steps, "seed": seed,
         "objective": "alternating: max-min distance to cloud / single ball-type mass",
         "max_block": max_block},
    )


def directed_hausdorff(A: list, B: list) -> Fraction:
    """``max_{a in A} min_{b in B} d(a, b)``."""
    if not A:
        return Fraction(0)
    if not B:
        raise ShapeMismatch("empty cloud")
    return max(min(half_l1(a.probs, b.probs) for b in B) for a in A)


def d_k(cloudG: LabelingCloud, cloudH: LabelingCloud) -> dict:
    if (cloudG.r, cloudG.k) != (cloudH.r, cloudH.k):
        raise ShapeMismatch(f"(r, k) differ: {(cloudG.r, cloudG.k)} vs {(cloudH.r, cloudH.k)}")
    gh = directed_hausdorff(cloudG.points, cloudH.points)
    hg = directed_hausdorff(cloudH.points, cloudG.points)
    return {"value": max(gh, hg), "G_to_H": gh, "H_to_G": hg, "estimate": True}


def d_lg(G: Graph, H: Graph, k_max: int, r: int, budgets=(8, 4), seed: int = 0,
         steps: int | None = None) -> dict:
    """``sum_{k<=k_max} 2^-k d_k`` with the tail bound ``2^-k_max``."""
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    n_random, n_opt = budgets
    terms = []
    total = Fraction(0)
    for k in range(1, k_max + 1):
        cG = sample_cloud(G, k, r, n_random, n_opt, seed, steps)
        cH = sample_cloud(H, k, r, n_random, n_opt, seed, steps)
        dk = d_k(cG, cH)
        terms.append({"k": k, **dk})
        total += Fraction(1, 2**k) * dk["value"]
    return {"value": total, "truncation_error": Fraction(1, 2**k_max), "terms": terms,
            "r": r, "budgets": list(budgets), "seed": seed}
