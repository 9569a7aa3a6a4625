"""Rooted r-balls, optionally vertex-labelled, and their canonical keys.

A key is the exact canonical code of the ball serialised to bytes, with a
version tag so persisted keys are invalidated if the encoding changes.  Equal
keys mean rooted (label-preserving) isomorphic balls; there is no hashing.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .canon import canonical_form
from .graph import Graph, GraphError

KEY_VERSION = "hb1"
COMPONENT_KEY_VERSION = "hc1"

MAX_RADIUS = 8
MAX_BALL_SIZE = 5000


class BallTooLarge(GraphError):
    pass


@dataclass(frozen=True)
class RootedBall:
    """Induced ball around a root; local ids in BFS order, 0 is the root."""

    radius: int
    adj: tuple[tuple[int, ...], ...]
    depth: tuple[int, ...]
    labels: tuple | None = None
    origin: tuple[int, ...] = ()  # host-graph id of each local vertex

    @property
    def size(self) -> int:
        return len(self.adj)

    def edges(self):
        return [(u, v) for u in range(self.size) for v in self.adj[u] if u < v]


def extract_ball(
    G: Graph,
    v: int,
    r: int,
    labels: Sequence | None = None,
    *,
    max_radius: int = MAX_RADIUS,
    max_size: int = MAX_BALL_SIZE,
) -> RootedBall:
    if r < 0:
        raise ValueError("radius must be >= 0")
    if r > max_radius:
        raise BallTooLarge(f"radius {r} exceeds limit {max_radius}")
    local = {v: 0}
    order = [v]
    depth = [0]
    queue = deque([v])
    while queue:
        x = queue.popleft()
        dx = depth[local[x]]
        if dx == r:
            continue
        for y in G.adj[x]:
            if y not in local:
                local[y] = len(order)
                order.append(y)
                depth.append(dx + 1)
                queue.append(y)
                if len(order) > max_size:
                    raise BallTooLarge(f"ball around {v} exceeds {max_size} vertices")
    adj = tuple(tuple(sorted(local[y] for y in G.adj[x] if y in local)) for x in order)
    lab = None if labels is None else tuple(labels[x] for x in order)
    return RootedBall(r, adj, tuple(depth), lab, tuple(order))


def _label_token(x) -> str:
    return str(x)


def ball_code(ball: RootedBall, truncate: int | None = None):
    """Canonical ``(code, order)`` for a rooted ball."""
    labels = ball.labels
    if labels is not None and truncate is not None:
        labels = tuple(lab[:truncate] for lab in labels)
    if labels is None:
        init = ball.depth
    else:
        init = tuple(zip(ball.depth, labels))
    return _cached_form(ball.adj, init)


@lru_cache(maxsize=65536)
def _cached_form(adj, init):
    # exact memo: identical local input gives identical output
    return canonical_form(adj, init)


def encode_code(prefix: str, header: str, code, label_of=None) -> bytes:
    cols, edges = code
    lab = "" if label_of is None else ",".join(_label_token(label_of(c)) for c in cols)
    es = ",".join(f"{a}-{b}" for a, b in edges)
    return f"{prefix}|{header}|n={len(cols)}|l={lab}|e={es}".encode()


def canonical_key(ball: RootedBall, truncate: int | None = None) -> bytes:
    """Canonical byte key of a rooted ball.

    ``truncate`` cuts string labels (B-colourings) to their first digits.
    """
    code, _ = ball_code(ball, truncate)
    label_of = None if ball.labels is None else (lambda c: c[1])
    return encode_code(KEY_VERSION, f"r={ball.radius}", code, label_of)


def decode_key(key: bytes) -> dict:
    """Parse a key back into ``radius``, ``labels`` and ``edges``.

    Positions are canonical; position 0 is the root.  Labels come back as
    strings.
    """
    parts = key.decode().split("|")
    if parts[0] != KEY_VERSION:
        raise ValueError(f"unknown key version {parts[0]!r}")
    fields = dict(p.split("=", 1) for p in parts[1:])
    n = int(fields["n"])
    labels = fields["l"].split(",") if fields["l"] else None
    edges = []
    if fields["e"]:
        for tok in fields["e"].split(","):
            a, b = tok.split("-")
            edges.append((int(a), int(b)))
    return {"radius": int(fields["r"]), "n": n, "labels": labels, "edges": edges}


def key_hex(key: bytes) -> str:
    return key.hex()


def ball_census(G: Graph, r: int, labels: Sequence | None = None, **limits) -> Counter:
    """Exact counts ``|T(G, alpha)|`` keyed by canonical ball key."""
    counts = Counter()
    for v in range(G.n):
        counts[canonical_key(extract_ball(G, v, r, labels, **limits))] += 1
    return counts


def truncate_ball(ball: RootedBall, r: int) -> RootedBall:
    """The sub-ball of radius ``r <= ball.radius`` around the same root."""
    keep = [i for i in range(ball.size) if ball.depth[i] <= r]
    new = {old: i for i, old in enumerate(keep)}
    adj = tuple(tuple(sorted(new[u] for u in ball.adj[i] if u in new)) for i in keep)
    labels = None if ball.labels is None else tuple(ball.labels[i] for i in keep)
    origin = tuple(ball.origin[i] for i in keep) if ball.origin else ()
    return RootedBall(r, adj, tuple(ball.depth[i] for i in keep), labels, origin)


def component_code(adj: Sequence[Sequence[int]], labels: Sequence | None = None):
    """Unrooted canonical ``(code, order)`` of a connected graph."""
    init = [0] * len(adj) if labels is None else list(labels)
    return canonical_form(adj, init)


def component_key(adj: Sequence[Sequence[int]], labels: Sequence | None = None) -> bytes:
    code, _ = component_code(adj, labels)
    return encode_code(COMPONENT_KEY_VERSION, "u", code, None if labels is None else str)
