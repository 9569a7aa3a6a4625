"""Ball statistics p(G, alpha), the truncated statistical distance and
convergence diagnostics.

The distance used throughout is

    d_stat^(R)(G, H) = sum_{r=1..R} 2^-r * (1/2) * sum_alpha |p(G,alpha) - p(H,alpha)|

which needs no global enumeration of ball types and lies in [0, 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .balls import ball_census, decode_key, extract_ball, canonical_key, truncate_ball
from .graph import Graph, GraphError

DEFAULT_RADIUS = 4
METRIC_NAME = "radius-weighted total variation: sum_r 2^-r * TV_r"


class RadiusMismatch(GraphError):
    pass


@dataclass
class BallDistribution:
    radius: int
    probs: dict  # key -> Fraction
    counts: dict = field(default_factory=dict)
    n: int = 0

    @classmethod
    def from_counts(cls, radius: int, counts, n: int) -> "BallDistribution":
        probs = {k: Fraction(c, n) for k, c in counts.items()}
        return cls(radius, probs, dict(counts), n)

    def total(self) -> Fraction:
        return sum(self.probs.values(), Fraction(0))


@dataclass
class StatProfile:
    d: int
    n: int
    dists: list  # BallDistribution for r = 1..R

    @property
    def R(self) -> int:
        return len(self.dists)

    def at(self, r: int) -> BallDistribution:
        return self.dists[r - 1]


def ball_distribution(G: Graph, r: int, labels=None) -> BallDistribution:
    if G.n == 0:
        raise GraphError("empty graph has no ball statistics")
    return BallDistribution.from_counts(r, ball_census(G, r, labels), G.n)


def stat_profile(G: Graph, R: int = DEFAULT_RADIUS) -> StatProfile:
    if R < 1:
        raise ValueError("R must be >= 1")
    return StatProfile(G.d, G.n, [ball_distribution(G, r) for r in range(1, R + 1)])


def tv(p: dict, q: dict) -> Fraction:
    """Total variation (1/2) L1 between two sparse distributions."""
    keys = set(p) | set(q)
    zero = Fraction(0)
    return sum((abs(p.get(k, zero) - q.get(k, zero)) for k in keys), zero) / 2


def _profile(x, R) -> StatProfile:
    if isinstance(x, StatProfile):
        return x
    return stat_profile(x, R)


def d_stat(G, H, R: int = DEFAULT_RADIUS) -> Fraction:
    """Exact truncated statistical distance; accepts graphs or profiles."""
    pG, pH = _profile(G, R), _profile(H, R)
    if pG.R < R or pH.R < R:
        raise RadiusMismatch(f"profiles computed to radius {pG.R}, {pH.R} < {R}")
    if pG.d != pH.d:
        raise RadiusMismatch(f"degree bounds differ: {pG.d} vs {pH.d}")
    total = Fraction(0)
    for r in range(1, R + 1):
        total += Fraction(1, 2**r) * tv(pG.at(r).probs, pH.at(r).probs)
    return total


def per_radius_tv(G, H, R: int = DEFAULT_RADIUS) -> list:
    pG, pH = _profile(G, R), _profile(H, R)
    return [tv(pG.at(r).probs, pH.at(r).probs) for r in range(1, R + 1)]


def coarsen(G: Graph, dist: BallDistribution) -> dict:
    """Recompute the (r-1)-census from r-ball keys alone (decode + truncate)."""
    out = {}
    for key, p in dist.probs.items():
        info = decode_key(key)
        n = info["n"]
        adj = [[] for _ in range(n)]
        for a, b in info["edges"]:
            adj[a].append(b)
            adj[b].append(a)
        # reuse the ball machinery: depths via BFS from root 0
        local = Graph.from_edges(n, info["edges"], max(1, max((len(x) for x in adj), default=1)))
        ball = extract_ball(local, 0, dist.radius)
        k = canonical_key(truncate_ball(ball, dist.radius - 1))
        out[k] = out.get(k, Fraction(0)) + p
    return out


def convergence_report(graphs: list, R: int = DEFAULT_RADIUS) -> dict:
    if len(graphs) < 2:
        raise ValueError("need at least two graphs")
    profiles = [stat_profile(G, R) for G in graphs]
    successive = [d_stat(profiles[i], profiles[i + 1], R) for i in range(len(profiles) - 1)]
    traces = {}
    for r in range(1, R + 1):
        keys = set()
        for p in profiles:
            keys |= set(p.at(r).probs)
        for k in sorted(keys):
            traces[(r, k)] = [p.at(r).probs.get(k, Fraction(0)) for p in profiles]
    decreasing = all(a > b for a, b in zip(successive, successive[1:]))
    return {
        "radius": R,
        "metric": METRIC_NAME,
        "sizes": [G.n for G in graphs],
        "successive": successive,
        "monotone_decreasing": decreasing,
        "traces": traces,
    }
