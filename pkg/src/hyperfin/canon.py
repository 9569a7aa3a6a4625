"""Exact canonical labelling of small vertex-coloured graphs.

Colour refinement followed by an individualisation search over the
lexicographically minimal code.  Codes are compared as tuples
``(colours in canonical order, sorted edge list in canonical positions)``, so
two inputs get the same code iff they are colour-preserving isomorphic.
Automorphisms discovered at equal leaves prune sibling branches in the same
orbit (only genuine automorphisms are ever used, so pruning is exact).
"""

from __future__ import annotations

from typing import Hashable, Sequence


def _rank(values: Sequence) -> list[int]:
    table = {v: i for i, v in enumerate(sorted(set(values)))}
    return [table[v] for v in values]


def refine(adj: Sequence[Sequence[int]], colors: list[int]) -> list[int]:
    """Equitable refinement of an integer colouring (1-dim Weisfeiler-Leman).

    Output colours are ranks of signatures, hence invariant under relabelling.
    """
    ncol = len(set(colors))
    n = len(adj)
    while True:
        sig = [(colors[v], tuple(sorted([colors[u] for u in adj[v]]))) for v in range(n)]
        new = _rank(sig)
        k = max(new) + 1 if n else 0
        if k == ncol:
            return new
        colors, ncol = new, k


def _leaf_code(adj, init, order):
    pos = [0] * len(order)
    for i, v in enumerate(order):
        pos[v] = i
    edges = []
    for v in order:
        pv = pos[v]
        for u in adj[v]:
            pu = pos[u]
            if pv < pu:
                edges.append((pv, pu))
    edges.sort()
    return (tuple(init[v] for v in order), tuple(edges))


def canonical_form(adj: Sequence[Sequence[int]], init: Sequence[Hashable]):
    """Return ``(code, order)``.

    ``order[i]`` is the input vertex placed at canonical position ``i``.  For
    two isomorphic inputs with orders ``o1`` and ``o2`` the map
    ``o1[i] -> o2[i]`` is a colour-preserving isomorphism.
    """
    n = len(adj)
    if n == 0:
        return ((), ()), ()
    start = refine(adj, _rank(list(init)))

    best = [None, None]  # code, order
    first = [None, None]
    autos: list[list[int]] = []

    def record(order):
        code = _leaf_code(adj, init, order)
        if first[0] is None:
            first[0], first[1] = code, order
            best[0], best[1] = code, order
            return
        for ref_code, ref_order in (first, best):
            if code == ref_code:
                g = [0] * n
                for a, b in zip(ref_order, order):
                    g[a] = b
                autos.append(g)
                return
        if code < best[0]:
            best[0], best[1] = code, order

    def orbit_reps(cell, fixed):
        usable = [g for g in autos if all(g[p] == p for p in fixed)]
        if not usable:
            return None
        parent = {v: v for v in cell}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in usable:
            for v in cell:
                w = g[v]
                if w in parent:
                    a, b = find(v), find(w)
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return find

    def search(colors, fixed):
        ncol = max(colors) + 1
        if ncol == n:
            order = [0] * n
            for v, c in enumerate(colors):
                order[c] = v
            record(order)
            return
        size = [0] * ncol
        for c in colors:
            size[c] += 1
        target = next(c for c in range(ncol) if size[c] > 1)
        cell = [v for v in range(n) if colors[v] == target]
        done_roots = set()
        for v in cell:
            if done_roots:
                find = orbit_reps(cell, fixed)
                if find is not None and find(v) in done_roots:
                    continue
            nxt = [2 * c + 1 for c in colors]
            nxt[v] = 2 * colors[v]
            search(refine(adj, _rank(nxt)), fixed + [v])
            find = orbit_reps(cell, fixed)
            done_roots = {find(u) if find else u for u in done_roots | {v}}

    search(start, [])
    return best[0], tuple(best[1])
