"""Component-type censuses c_S of K-bounded graphs and the equipartition check."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .balls import (COMPONENT_KEY_VERSION, BallTooLarge, canonical_key, component_code, component_key,
                    encode_code, extract_ball)
from .graph import Graph, GraphError, components, remove_edges
from .partition import Infeasible, as_fraction, iso_peel


class ComponentTooLarge(GraphError):
    def __init__(self, size: int, K: int):
        super().__init__(f"component of size {size} exceeds K={K}")
        self.size = size


class KMismatch(GraphError):
    pass


@dataclass
class ComponentCensus:
    K: int
    n: int
    mass: dict  # component key -> vertex count
    ncomp: dict = field(default_factory=dict)  # component key -> number of components

    @property
    def c(self) -> dict:
        """Vertex-mass fractions c_S."""
        return {k: Fraction(v, self.n) for k, v in self.mass.items()}

    def total(self) -> Fraction:
        return sum(self.c.values(), Fraction(0))


def _local_adj(G: Graph, comp):
    idx = {v: i for i, v in enumerate(comp)}
    return tuple(tuple(sorted(idx[u] for u in G.adj[v])) for v in comp)


def typed_components(Gp: Graph, K: int):
    """Yield ``(key, component, canonical order in host ids)``."""
    for comp in components(Gp):
        if len(comp) > K:
            raise ComponentTooLarge(len(comp), K)
        adj = _local_adj(Gp, comp)
        code, order = component_code(adj)
        key = encode_code(COMPONENT_KEY_VERSION, "u", code)
        yield key, comp, [comp[i] for i in order]


def component_census(Gp: Graph, K: int) -> ComponentCensus:
    mass, ncomp = Counter(), Counter()
    for key, comp, _ in typed_components(Gp, K):
        mass[key] += len(comp)
        ncomp[key] += 1
    return ComponentCensus(K, Gp.n, dict(mass), dict(ncomp))


def census_from_balls(Gp: Graph, K: int) -> ComponentCensus:
    """Census read off the (K+1)-balls only.

    A (K+1)-ball with no vertex at depth K+1 is a whole component, so its
    type is the unrooted type of the ball's graph.  Each vertex contributes
    one unit of mass to the type of its own ball.
    """
    r = K + 1
    mass = Counter()
    memo = {}
    for v in range(Gp.n):
        # the guardrail is irrelevant here: a closed ball has <= K vertices
        try:
            ball = extract_ball(Gp, v, r, max_radius=r, max_size=K + 1)
        except BallTooLarge:
            raise ComponentTooLarge(K + 1, K) from None
        if max(ball.depth) >= r or ball.size > K:
            raise ComponentTooLarge(ball.size, K)
        rkey = canonical_key(ball)
        if rkey not in memo:
            memo[rkey] = component_key(ball.adj)
        mass[memo[rkey]] += 1
    return ComponentCensus(K, Gp.n, dict(mass))


def census_l1(c1: ComponentCensus, c2: ComponentCensus) -> Fraction:
    if c1.K != c2.K:
        raise KMismatch(f"K differs: {c1.K} vs {c2.K}")
    a, b = c1.c, c2.c
    zero = Fraction(0)
    return sum((abs(a.get(k, zero) - b.get(k, zero)) for k in set(a) | set(b)), zero)


def equipartition_check(G: Graph, H: Graph, eps, K: int, delta, seed: int = 0) -> dict:
    """Peel both graphs with the same strategy and test the two clauses:
    removal below 2*eps*|E| on each side and census L1 below delta.

    ``eps`` is both the peeling threshold and the removal target.
    """
    eps, delta = as_fraction(eps), as_fraction(delta)
    report = {"eps": eps, "K": K, "delta": delta, "seed": seed}
    parts = {}
    for name, X in (("G", G), ("H", H)):
        try:
            parts[name] = iso_peel(X, eps, K, seed)
        except Infeasible as exc:
            report["infeasible"] = name
            report["residual"] = exc.residual
            report["hypothesis_violated"] = True
            report["pass"] = False
            return report
    cG = component_census(remove_edges(G, parts["G"].cut), K)
    cH = component_census(remove_edges(H, parts["H"].cut), K)
    l1 = census_l1(cG, cH)
    fG, fH = parts["G"].removed_fraction_edges, parts["H"].removed_fraction_edges
    report.update({
        "removed_fraction_G": fG,
        "removed_fraction_H": fH,
        "removal_ok": fG < 2 * eps and fH < 2 * eps,
        "census_l1": l1,
        "census_ok": l1 < delta,
        "partitions": parts,
        "censuses": (cG, cH),
        "hypothesis_violated": False,
    })
    report["pass"] = report["removal_ok"] and report["census_ok"]
    return report
