"""Schreier graphs of free-group actions on finite sets and their
marker-gadget encoding as unlabelled bounded-degree graphs.

Encoding, for generators s_1..s_n acting on X = {0..m-1}:

1. every x in X gets a pendant path with n+1 edges;
2. every Schreier edge {x, y} is subdivided twice, x - a - b - y;
3. for each s_i x = y != x, a pendant path with i edges hangs off the
   subdivision vertex next to x (several markers may share one vertex).

Original vertices are recognised by their pendant path of exactly n+1
edges; marker lengths 1..n recover the generator labels and directions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import seeds
from .balls import RootedBall, extract_ball
from .graph import Graph, GraphError, ParseError, components

ORIGINAL = "original"
GADGET = "gadget"
SUBDIVISION = "subdivision"
MARKER = "marker"


class DecodeFailure(GraphError):
    pass


@dataclass(frozen=True)
class FiniteAction:
    m: int
    perms: tuple  # perms[i][x] = s_{i+1} x

    def __post_init__(self):
        for i, p in enumerate(self.perms):
            if len(p) != self.m or sorted(p) != list(range(self.m)):
                raise GraphError(f"generator {i + 1} is not a permutation of 0..{self.m - 1}")

    @property
    def n_gens(self) -> int:
        return len(self.perms)


def random_action(m: int, n: int, seed: int) -> FiniteAction:
    perms = []
    for i in range(n):
        p = list(range(m))
        seeds.rng(seed, "action", m, n, i).shuffle(p)
        perms.append(tuple(p))
    return FiniteAction(m, tuple(perms))


def parse_action(text: str) -> FiniteAction:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [(i + 1, ln) for i, ln in enumerate(lines) if ln]
    if not lines:
        raise ParseError(1, "missing header")
    try:
        m, n = map(int, lines[0][1].split())
        perms = [tuple(map(int, ln.split())) for _, ln in lines[1:]]
    except ValueError as exc:
        raise ParseError(lines[0][0], str(exc)) from None
    if len(perms) != n:
        raise ParseError(lines[-1][0], f"expected {n} permutation lines, got {len(perms)}")
    return FiniteAction(m, tuple(perms))


def serialize_action(a: FiniteAction) -> str:
    rows = [f"{a.m} {a.n_gens}"] + [" ".join(map(str, p)) for p in a.perms]
    return "\n".join(rows) + "\n"


@dataclass
class LabeledGraph:
    graph: Graph
    labels: dict  # (u, v) with u < v -> frozenset of generator indices (1-based)


def schreier_graph(a: FiniteAction) -> LabeledGraph:
    labels: dict = {}
    for i, p in enumerate(a.perms, 1):
        for x in range(a.m):
            y = p[x]
            if x != y:
                e = (min(x, y), max(x, y))
                labels[e] = labels.get(e, frozenset()) | {i}
    d = max(1, 2 * a.n_gens)
    return LabeledGraph(Graph.from_edges(a.m, sorted(labels), d), labels)


@dataclass
class MarkerGraph:
    graph: Graph
    roles: list  # per vertex: (kind, detail)
    degree_bound: int
    step1_count: int
    step_counts: dict = field(default_factory=dict)

    def strip(self) -> Graph:
        return self.graph


def degree_bound(n: int) -> int:
    """Originals have the gadget plus at most 2n Schreier edges; subdivision
    vertices have two path edges plus at most n markers."""
    return max(2 * n + 1, n + 2)


def encode_action(a: FiniteAction) -> MarkerGraph:
    n, m = a.n_gens, a.m
    if n < 1:
        raise GraphError("need at least one generator")
    roles = [(ORIGINAL, x) for x in range(m)]
    edges = []

    def new(role):
        roles.append(role)
        return len(roles) - 1

    def hang_path(at, length, role):
        prev = at
        for pos in range(1, length + 1):
            v = new((role[0], role[1] + (pos,)))
            edges.append((prev, v))
            prev = v

    for x in range(m):
        hang_path(x, n + 1, (GADGET, (x,)))
    step1 = len(roles)
    sub = {}
    for x, y in sorted(schreier_graph(a).labels):
        ax = new((SUBDIVISION, (x, y, x)))
        by = new((SUBDIVISION, (x, y, y)))
        edges.extend([(x, ax), (ax, by), (by, y)])
        sub[(x, y)] = ax
        sub[(y, x)] = by
    step2 = len(roles)
    for i, p in enumerate(a.perms, 1):
        for x in range(m):
            y = p[x]
            if x != y:
                hang_path(sub[(x, y)], i, (MARKER, (i, x, y)))
    g = Graph.from_edges(len(roles), edges, degree_bound(n))
    return MarkerGraph(g, roles, degree_bound(n), step1,
                       {"step1": step1, "step2": step2, "step3": len(roles)})


def decode_radius(n: int) -> int:
    # arms of length <= n+1 seen from distance 2 need correct degrees up to depth n+3
    return max(3 * n, n + 4)


class _Local:
    """Read-only view of a rooted ball that trusts degrees below the rim."""

    def __init__(self, ball: RootedBall):
        self.ball = ball

    def deg(self, u):
        if self.ball.depth[u] >= self.ball.radius:
            raise DecodeFailure("pattern reaches the edge of the ball")
        return len(self.ball.adj[u])

    def arm(self, prev, u, limit):
        """Length of the path prev -> u -> ... through degree-2 vertices if it
        ends at a leaf within ``limit`` edges, else None."""
        steps = 1
        while True:
            du = self.deg(u)
            if du == 1:
                return steps
            if du != 2 or steps >= limit:
                return None
            nxt = [w for w in self.ball.adj[u] if w != prev]
            prev, u = u, nxt[0]
            steps += 1


def _is_original(loc: _Local, n: int) -> bool:
    ball = loc.ball
    arms = [u for u in ball.adj[0] if loc.arm(0, u, n + 1) == n + 1]
    if not arms:
        return False
    if loc.deg(0) == 1:
        # an isolated gadget path: both ends qualify, keep the smaller host id
        end = arms[0]
        prev = 0
        while loc.deg(end) == 2:
            prev, end = end, [w for w in ball.adj[end] if w != prev][0]
        return ball.origin[0] < ball.origin[end]
    return True


def _edges_from(loc: _Local, n: int):
    """Yield ``(i, direction, host id of the other original)``; direction
    +1 means s_i x = y, -1 means s_i y = x."""
    ball = loc.ball
    for a in ball.adj[0]:
        if loc.arm(0, a, n + 1) == n + 1:
            continue
        a_marks, b = _split(loc, a, 0, n)
        b_marks, y = _split(loc, b, a, n)
        for i in a_marks:
            yield i, +1, ball.origin[y]
        for i in b_marks:
            yield i, -1, ball.origin[y]


def _split(loc: _Local, v, came_from, n):
    marks, rest = [], []
    for w in loc.ball.adj[v]:
        if w == came_from:
            continue
        length = loc.arm(v, w, n)
        if length is None:
            rest.append(w)
        else:
            marks.append(length)
    if len(rest) != 1:
        raise DecodeFailure(f"subdivision vertex with {len(rest)} continuations")
    return marks, rest[0]


def decode_action(G: Graph, n_gens: int) -> FiniteAction:
    """Recover the action from the bare graph, classifying every vertex from
    its own ball only; the result is defined up to relabelling of X."""
    n = n_gens
    R = decode_radius(n)
    originals = []
    for v in range(G.n):
        ball = extract_ball(G, v, R, max_radius=R)
        if _is_original(_Local(ball), n):
            originals.append(v)
    index = {v: i for i, v in enumerate(originals)}
    m = len(originals)
    perms = [[None] * m for _ in range(n)]

    def put(i, x, y):
        if not 1 <= i <= n:
            raise DecodeFailure(f"marker length {i} outside 1..{n}")
        cur = perms[i - 1][x]
        if cur is not None and cur != y:
            raise DecodeFailure(f"generator {i} maps {x} to both {cur} and {y}")
        perms[i - 1][x] = y

    for v in originals:
        loc = _Local(extract_ball(G, v, R, max_radius=R))
        for i, direction, y in _edges_from(loc, n):
            if y not in index:
                raise DecodeFailure(f"edge from {v} ends at non-original {y}")
            if direction > 0:
                put(i, index[v], index[y])
            else:
                put(i, index[y], index[v])
    out = []
    for p in perms:
        q = tuple(x if y is None else y for x, y in enumerate(p))
        if sorted(q) != list(range(m)):
            raise DecodeFailure("decoded generator is not a bijection")
        out.append(q)
    return FiniteAction(m, tuple(out))


def orbits(a: FiniteAction) -> list:
    return components(schreier_graph(a).graph)


def _try_map(a: FiniteAction, b: FiniteAction, x, y, used) -> dict | None:
    phi = {x: y}
    stack = [x]
    inv_a = [_inverse(p) for p in a.perms]
    inv_b = [_inverse(p) for p in b.perms]
    while stack:
        u = stack.pop()
        for pa, pb in list(zip(a.perms, b.perms)) + list(zip(inv_a, inv_b)):
            u2, w2 = pa[u], pb[phi[u]]
            if u2 in phi:
                if phi[u2] != w2:
                    return None
            else:
                if w2 in used or w2 in phi.values():
                    return None
                phi[u2] = w2
                stack.append(u2)
    return phi


def _inverse(p):
    q = [0] * len(p)
    for i, x in enumerate(p):
        q[x] = i
    return q


def isomorphic(a: FiniteAction, b: FiniteAction) -> bool:
    """Is there a bijection phi with phi(s_i x) = s_i phi(x) for all i, x?

    Orbits are matched greedily, which is exact because orbit isomorphism is
    an equivalence relation."""
    if a.m != b.m or a.n_gens != b.n_gens:
        return False
    used: set = set()
    free_b = [o for o in orbits(b)]
    for orb in orbits(a):
        x = orb[0]
        for j, ob in enumerate(free_b):
            if ob is None or len(ob) != len(orb):
                continue
            phi = next((f for y in ob if (f := _try_map(a, b, x, y, used)) is not None), None)
            if phi is not None and len(phi) == len(orb):
                used |= set(phi.values())
                free_b[j] = None
                break
        else:
            return False
    return True
