"""Bounded-degree simple graphs: representation, validation, edge-list I/O."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable


class GraphError(ValueError):
    pass


class ParseError(GraphError):
    def __init__(self, line: int, text: str = ""):
        super().__init__(f"line {line}: cannot parse {text!r}")
        self.line = line


class LoopEdge(GraphError):
    def __init__(self, v: int):
        super().__init__(f"loop at vertex {v}")
        self.v = v


class DuplicateEdge(GraphError):
    def __init__(self, u: int, v: int):
        super().__init__(f"duplicate edge {u}-{v}")
        self.edge = (u, v)


class DegreeExceeded(GraphError):
    def __init__(self, v: int, deg: int, d: int):
        super().__init__(f"vertex {v} has degree {deg} > {d}")
        self.v = v


class UnknownEdge(GraphError):
    def __init__(self, u: int, v: int):
        super().__init__(f"{u}-{v} is not an edge")
        self.edge = (u, v)


def norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1`` with degree bound ``d``.

    ``adj[v]`` is the sorted tuple of neighbours of ``v``.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    d: int
    _edges: tuple[tuple[int, int], ...] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.d < 1:
            raise GraphError(f"degree bound must be >= 1, got {self.d}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        for v, nb in enumerate(self.adj):
            if len(nb) > self.d:
                raise DegreeExceeded(v, len(nb), self.d)
            prev = -1
            for u in nb:
                if u == v:
                    raise LoopEdge(v)
                if not 0 <= u < self.n:
                    raise GraphError(f"neighbour {u} of {v} out of range")
                if u == prev:
                    raise DuplicateEdge(v, u)
                if u < prev:
                    raise GraphError(f"adjacency of {v} not sorted")
                prev = u
        for v, nb in enumerate(self.adj):
            for u in nb:
                if v not in self.adj[u]:
                    raise GraphError(f"asymmetric adjacency {v}->{u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], d: int) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise LoopEdge(u)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for n={n}")
            if v in nbrs[u]:
                raise DuplicateEdge(*norm_edge(u, v))
            nbrs[u].add(v)
            nbrs[v].add(u)
        for v, s in enumerate(nbrs):
            if len(s) > d:
                raise DegreeExceeded(v, len(s), d)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs), d)

    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edges as sorted ``(u, v)`` pairs with ``u < v``."""
        if self._edges is None:
            es = tuple((u, v) for u in range(self.n) for v in self.adj[u] if u < v)
            object.__setattr__(self, "_edges", es)
        return self._edges

    @property
    def m(self) -> int:
        return len(self.edges())

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.adj[u]
        # adjacency lists are short (<= d); linear scan beats bisect here
        return v in nb

    def with_degree_bound(self, d: int) -> "Graph":
        return Graph(self.n, self.adj, d)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``0..k-1``; returns it with the old ids."""
        old = sorted(set(vertices))
        new = {v: i for i, v in enumerate(old)}
        adj = tuple(tuple(sorted(new[u] for u in self.adj[v] if u in new)) for v in old)
        return Graph(len(old), adj, self.d), old


@dataclass(frozen=True)
class EdgeSet:
    """A set of edges of a host graph, stored canonically with ``u < v``."""

    edges: frozenset

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> "EdgeSet":
        return cls(frozenset(norm_edge(u, v) for u, v in pairs))

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(sorted(self.edges))

    def __contains__(self, e):
        return norm_edge(*e) in self.edges

    def check_in(self, G: Graph) -> None:
        for u, v in self.edges:
            if not (0 <= u < G.n and 0 <= v < G.n and G.has_edge(u, v)):
                raise UnknownEdge(u, v)


def load_edge_list(text: str | bytes, d: int | None = None) -> Graph:
    """Parse the ``"n d"`` header + ``"u v"`` lines format.

    ``d`` overrides the header's degree bound when given.
    """
    if isinstance(text, bytes):
        text = text.decode()
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError(1, "")
    lineno, header = lines[0]
    try:
        n, hd = (int(x) for x in header.split())
    except ValueError:
        raise ParseError(lineno, header) from None
    if n < 0:
        raise ParseError(lineno, header)
    d = hd if d is None else d
    edges = []
    for lineno, ln in lines[1:]:
        parts = ln.split()
        try:
            u, v = int(parts[0]), int(parts[1])
            if len(parts) != 2 or u < 0 or v < 0:
                raise ValueError
        except (ValueError, IndexError):
            raise ParseError(lineno, ln) from None
        if u >= n or v >= n:
            raise ParseError(lineno, ln)
        edges.append((u, v))
    return Graph.from_edges(n, edges, d)


def serialize(G: Graph) -> str:
    out = [f"{G.n} {G.d}"]
    out.extend(f"{u} {v}" for u, v in G.edges())
    return "\n".join(out) + "\n"


def read_graph(path, d: int | None = None) -> Graph:
    with open(path, "rb") as fh:
        return load_edge_list(fh.read(), d)


def remove_edges(G: Graph, Z: EdgeSet | Iterable[tuple[int, int]]) -> Graph:
    """``G`` minus the edges in ``Z`` on the same vertex set."""
    if not isinstance(Z, EdgeSet):
        Z = EdgeSet.of(Z)
    Z.check_in(G)
    if not Z.edges:
        return G
    adj = []
    for v in range(G.n):
        adj.append(tuple(u for u in G.adj[v] if norm_edge(u, v) not in Z.edges))
    return Graph(G.n, tuple(adj), G.d)


def remove_vertex_edges(G: Graph, vertices: Iterable[int]) -> Graph:
    """Remove every edge incident to a vertex of ``vertices``."""
    vs = set(vertices)
    return remove_edges(G, EdgeSet.of(e for e in G.edges() if e[0] in vs or e[1] in vs))


def components(G: Graph) -> list[list[int]]:
    """Connected components, each sorted, listed by minimum vertex."""
    seen = [False] * G.n
    comps = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in G.adj[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    queue.append(u)
        comp.sort()
        comps.append(comp)
    return comps


def disjoint_union(*graphs: Graph) -> Graph:
    d = max(g.d for g in graphs)
    adj = []
    off = 0
    for g in graphs:
        adj.extend(tuple(u + off for u in nb) for nb in g.adj)
        off += g.n
    return Graph(off, tuple(adj), d)


def bfs_distances(G: Graph, src: int, limit: int | None = None) -> dict[int, int]:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        dv = dist[v]
        if limit is not None and dv >= limit:
            continue
        for u in G.adj[v]:
            if u not in dist:
                dist[u] = dv + 1
                queue.append(u)
    return dist
