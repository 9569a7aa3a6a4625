"""Random B-colourings and local rules read off coloured balls.

A vertex rule selects the vertices whose coloured r-ball lies in an accept
set.  A subgraph rule maps a coloured l-ball to a symbol ``(k, codes)``:
the root has degree k and keeps the edges to its neighbours at the listed
positions, neighbours being ordered by colour (plain lexicographic order on
the bit strings).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import seeds
from .balls import canonical_key, decode_key, extract_ball
from .graph import Graph, GraphError, components, norm_edge, remove_vertex_edges
from .partition import Partition, as_fraction, iso_peel


class ShapeMismatch(GraphError):
    pass


class CollisionPresent(GraphError):
    pass


@dataclass(frozen=True)
class BColoring:
    s: int
    strings: tuple  # one '0'/'1' string of length s per vertex
    seed: int

    def truncated(self, s: int) -> "BColoring":
        """The coupled coloring at a shorter length."""
        if s > self.s:
            raise ShapeMismatch(f"cannot extend {self.s}-bit colors to {s}")
        return BColoring(s, tuple(x[:s] for x in self.strings), self.seed)


def b_color(G: Graph, s: int, seed: int) -> BColoring:
    """Independent uniform s-bit strings; ``b_color(G, s, seed)`` is the
    s-bit prefix of ``b_color(G, t, seed)`` for any t >= s."""
    if s < 1:
        raise ValueError("s must be >= 1")
    return BColoring(s, tuple(seeds.bits(seed, v, s) for v in range(G.n)), seed)


def _check(G: Graph, coloring: BColoring):
    if len(coloring.strings) != G.n:
        raise ShapeMismatch(f"coloring has {len(coloring.strings)} entries for {G.n} vertices")


def has_collision(G: Graph, coloring: BColoring, v: int, r: int) -> bool:
    ball = extract_ball(G, v, r)
    cols = [coloring.strings[x] for x in ball.origin]
    return len(set(cols)) != len(cols)


def collision_mass(G: Graph, coloring: BColoring, r: int) -> Fraction:
    """Fraction of vertices whose coloured r-ball repeats a colour."""
    _check(G, coloring)
    if G.n == 0:
        return Fraction(0)
    return Fraction(sum(has_collision(G, coloring, v, r) for v in range(G.n)), G.n)


def colored_key(G: Graph, coloring: BColoring, v: int, r: int) -> bytes:
    return canonical_key(extract_ball(G, v, r, coloring.strings))


@dataclass(frozen=True)
class VertexRule:
    r: int
    s: int
    accept: frozenset  # coloured ball keys
    # every ball with a repeated colour is accepted, seen or not
    include_collisions: bool = False


def apply_vertex_rule(G: Graph, coloring: BColoring, rule: VertexRule) -> list:
    _check(G, coloring)
    if coloring.s != rule.s:
        raise ShapeMismatch(f"coloring has s={coloring.s}, rule expects s={rule.s}")
    out = []
    for v in range(G.n):
        if rule.include_collisions and has_collision(G, coloring, v, rule.r):
            out.append(v)
        elif rule.accept and colored_key(G, coloring, v, rule.r) in rule.accept:
            out.append(v)
    return out


def rule_from_predicate(G: Graph, coloring: BColoring, r: int, pred) -> VertexRule:
    """Accept every realised coloured r-ball whose decoded key satisfies
    ``pred`` (a function of the dict returned by ``decode_key``)."""
    _check(G, coloring)
    keys = {colored_key(G, coloring, v, r) for v in range(G.n)}
    return VertexRule(r, coloring.s, frozenset(k for k in keys if pred(decode_key(k))))


def learn_partition_rule(Gref: Graph, coloring: BColoring, P: Partition, r: int, s: int) -> VertexRule:
    """Accept the coloured r-balls of every endpoint of a cut edge, and every
    ball with a repeated colour."""
    _check(Gref, coloring)
    if coloring.s != s:
        raise ShapeMismatch(f"coloring has s={coloring.s}, expected {s}")
    witnesses = sorted({x for e in P.cut for x in e})
    keys = {colored_key(Gref, coloring, v, r) for v in witnesses}
    for v in range(Gref.n):
        if has_collision(Gref, coloring, v, r):
            keys.add(colored_key(Gref, coloring, v, r))
    return VertexRule(r, s, frozenset(keys), include_collisions=True)


def max_component(G: Graph) -> int:
    return max((len(c) for c in components(G)), default=0)


def transfer_partition(Gref: Graph, Gtarget: Graph, eps, K: int, r: int, s: int, seed: int = 0) -> dict:
    """Learn a vertex rule from a partition of ``Gref`` and apply it to
    ``Gtarget`` under a fresh coloring.

    Deleting all edges at selected vertices must leave components of size
    <= K on the target, and the selected fraction should track the
    reference fraction.
    """
    eps = as_fraction(eps)
    P = iso_peel(Gref, eps, K, seeds.derive(seed, "peel"))
    cref = b_color(Gref, s, seeds.derive(seed, "color", "ref"))
    rule = learn_partition_rule(Gref, cref, P, r, s)
    VA_ref = apply_vertex_rule(Gref, cref, rule)
    ctar = b_color(Gtarget, s, seeds.derive(seed, "color", "target"))
    VA_tar = apply_vertex_rule(Gtarget, ctar, rule)
    ref_frac = Fraction(len(VA_ref), Gref.n)
    tar_frac = Fraction(len(VA_tar), Gtarget.n)
    ref_max = max_component(remove_vertex_edges(Gref, VA_ref))
    tar_max = max_component(remove_vertex_edges(Gtarget, VA_tar))
    return {
        "seed": seed,
        "r": r,
        "s": s,
        "eps": eps,
        "K": K,
        "rule_size": len(rule.accept),
        "witness_fraction": Fraction(len({x for e in P.cut for x in e}), Gref.n),
        "reference_fraction": ref_frac,
        "target_fraction": tar_frac,
        "reference_max_component": ref_max,
        "target_max_component": tar_max,
        "collision_mass_target": collision_mass(Gtarget, ctar, r),
        "components_ok": tar_max <= K,
        "fraction_ok": abs(tar_frac - ref_frac) <= Fraction(1, 20),
    }


@dataclass(frozen=True)
class Symbol:
    k: int
    codes: tuple  # strictly increasing positions in 1..k

    def __post_init__(self):
        c = self.codes
        if any(a >= b for a, b in zip(c, c[1:])) or any(not 1 <= a <= self.k for a in c):
            raise ValueError(f"invalid symbol {self}")


@dataclass
class SubgraphRule:
    l: int
    s: int
    table: dict  # coloured l-ball key -> Symbol
    conflicts: int = 0
    dropped: frozenset = field(default_factory=frozenset)

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "s": self.s,
            "conflicts": self.conflicts,
            "table": {k.hex(): {"k": sym.k, "codes": list(sym.codes)} for k, sym in sorted(self.table.items())},
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SubgraphRule":
        table = {bytes.fromhex(h): Symbol(v["k"], tuple(v["codes"])) for h, v in doc["table"].items()}
        return cls(doc["l"], doc["s"], table, doc.get("conflicts", 0))


def vertex_rule_to_json(rule: VertexRule) -> dict:
    return {"r": rule.r, "s": rule.s, "include_collisions": rule.include_collisions,
            "accept": sorted(k.hex() for k in rule.accept)}


def vertex_rule_from_json(doc: dict) -> VertexRule:
    return VertexRule(doc["r"], doc["s"], frozenset(bytes.fromhex(h) for h in doc["accept"]),
                      doc.get("include_collisions", False))


def _ordered_neighbors(G: Graph, coloring: BColoring, v: int) -> list:
    return sorted(G.adj[v], key=lambda u: coloring.strings[u])


def encode_subgraph(Gref: Graph, coloring: BColoring, Hsub: Graph, l: int, s: int) -> SubgraphRule:
    _check(Gref, coloring)
    if Hsub.n != Gref.n:
        raise ShapeMismatch("subgraph must share the vertex set")
    if coloring.s != s:
        raise ShapeMismatch(f"coloring has s={coloring.s}, expected {s}")
    if l < 1:
        raise ValueError("l must be >= 1 so the ball sees the root's neighbours")
    if collision_mass(Gref, coloring, l):
        raise CollisionPresent(f"coloring repeats colours inside some {l}-ball")
    table, bad = {}, set()
    for v in range(Gref.n):
        nbrs = _ordered_neighbors(Gref, coloring, v)
        sym = Symbol(len(nbrs), tuple(i for i, u in enumerate(nbrs, 1) if Hsub.has_edge(v, u)))
        key = colored_key(Gref, coloring, v, l)
        if key in bad:
            continue
        if key in table and table[key] != sym:
            del table[key]
            bad.add(key)
            continue
        table[key] = sym
    return SubgraphRule(l, s, table, len(bad), frozenset(bad))


def apply_subgraph_rule(G: Graph, coloring: BColoring, rule: SubgraphRule, report: dict | None = None) -> Graph:
    """Keep an edge iff at least one endpoint selects it.

    ``report`` (if given) receives the number of matched vertices, of edges
    selected by only one endpoint while the other endpoint was matched, and
    of matched vertices skipped because their neighbours share a colour.
    """
    _check(G, coloring)
    if coloring.s != rule.s:
        raise ShapeMismatch(f"coloring has s={coloring.s}, rule expects s={rule.s}")
    votes: dict = {}
    matched = [False] * G.n
    skipped = 0
    for v in range(G.n):
        sym = rule.table.get(colored_key(G, coloring, v, rule.l))
        if sym is None:
            continue
        nbrs = _ordered_neighbors(G, coloring, v)
        if sym.k != len(nbrs):
            raise ShapeMismatch(f"symbol degree {sym.k} at vertex {v} of degree {len(nbrs)}")
        if len({coloring.strings[u] for u in nbrs}) != len(nbrs):
            skipped += 1
            continue
        matched[v] = True
        for i in sym.codes:
            e = norm_edge(v, nbrs[i - 1])
            votes[e] = votes.get(e, 0) + 1
    kept = sorted(votes)
    if report is not None:
        report["matched"] = sum(matched)
        report["skipped"] = skipped
        report["disagreements"] = sum(1 for (a, b), c in votes.items() if c == 1 and matched[a] and matched[b])
    return Graph.from_edges(G.n, kept, G.d)
