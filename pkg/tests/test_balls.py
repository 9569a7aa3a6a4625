import random

import pytest
from hypothesis import given, strategies as st

from corpus import random_graph
from hyperfin import generators as gen
from hyperfin.balls import (BallTooLarge, KEY_VERSION, RootedBall, ball_census, canonical_key, decode_key,
                            extract_ball, truncate_ball)
from hyperfin.canon import canonical_form
from hyperfin.graph import Graph


def relabel(ball: RootedBall, perm) -> RootedBall:
    """Move local vertex i to perm[i] (perm[0] must be 0)."""
    n = ball.size
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    adj = tuple(tuple(sorted(perm[u] for u in ball.adj[inv[j]])) for j in range(n))
    depth = tuple(ball.depth[inv[j]] for j in range(n))
    labels = None if ball.labels is None else tuple(ball.labels[inv[j]] for j in range(n))
    return RootedBall(ball.radius, adj, depth, labels)


def test_radius_zero():
    b = extract_ball(gen.grid(3, 3), 4, 0)
    assert b.size == 1 and b.edges() == []


def test_c6_balls():
    b = extract_ball(gen.cycle(6), 2, 1)
    assert b.size == 3 and len(b.adj[0]) == 2 and b.edges() == [(0, 1), (0, 2)]
    whole = extract_ball(gen.cycle(6), 0, 3)
    assert whole.size == 6 and len(whole.edges()) == 6
    # induced: the two depth-3 vertices of C_7 stay adjacent
    c7 = extract_ball(gen.cycle(7), 0, 3)
    assert c7.size == 7 and len(c7.edges()) == 7 and max(c7.depth) == 3
    assert c7.depth.count(3) == 2


def test_vertex_transitive_keys():
    C6 = gen.cycle(6)
    assert len({canonical_key(extract_ball(C6, v, 1)) for v in range(6)}) == 1


def test_c6_c7_keys():
    C6, C7 = gen.cycle(6), gen.cycle(7)
    assert canonical_key(extract_ball(C6, 0, 2)) == canonical_key(extract_ball(C7, 0, 2))
    assert canonical_key(extract_ball(C6, 0, 3)) != canonical_key(extract_ball(C7, 0, 3))


def test_census_examples():
    assert list(ball_census(gen.cycle(9), 1).values()) == [9]
    P3 = ball_census(gen.path(3), 1)
    assert sorted(P3.values()) == [1, 2]
    n = 7
    L = ball_census(gen.leafed_line(n), 1)
    leaf = sum(c for k, c in L.items() if decode_key(k)["n"] == 2)
    assert leaf == 2 * (n + 1) and sum(L.values()) == 3 * (n + 1)


def test_key_format():
    k = canonical_key(extract_ball(gen.path(3), 1, 1))
    assert k.startswith(KEY_VERSION.encode())
    info = decode_key(k)
    assert info == {"radius": 1, "n": 3, "labels": None, "edges": [(0, 1), (0, 2)]}


def test_guardrails():
    with pytest.raises(BallTooLarge):
        extract_ball(gen.cycle(30), 0, 9)
    with pytest.raises(BallTooLarge):
        extract_ball(gen.grid(30, 30), 15 * 30 + 15, 8, max_size=50)


def test_truncation_of_bitstring_labels():
    G = gen.path(3)
    a = extract_ball(G, 1, 1, ["0110", "1000", "0111"])
    b = extract_ball(G, 1, 1, ["0111", "1001", "0110"])
    assert canonical_key(a) != canonical_key(b)
    assert canonical_key(a, truncate=2) == canonical_key(b, truncate=2)


@st.composite
def ball_and_perm(draw):
    n = draw(st.integers(1, 14))
    G = random_graph(random.Random(draw(st.integers(0, 2**32))), n, 3, draw(st.floats(0.1, 0.6)))
    v = draw(st.integers(0, n - 1))
    r = draw(st.integers(0, 3))
    labelled = draw(st.booleans())
    labels = [draw(st.integers(1, 2)) for _ in range(n)] if labelled else None
    ball = extract_ball(G, v, r, labels)
    rest = draw(st.permutations(list(range(1, ball.size))))
    return ball, [0] + list(rest)


@given(ball_and_perm())
def test_relabelled_copy_same_key(bp):
    ball, perm = bp
    assert canonical_key(relabel(ball, perm)) == canonical_key(ball)


@given(ball_and_perm())
def test_canonical_order_is_isomorphism(bp):
    ball, perm = bp
    other = relabel(ball, perm)
    init1 = ball.depth if ball.labels is None else list(zip(ball.depth, ball.labels))
    init2 = other.depth if other.labels is None else list(zip(other.depth, other.labels))
    (c1, o1), (c2, o2) = canonical_form(ball.adj, init1), canonical_form(other.adj, init2)
    assert c1 == c2
    phi = dict(zip(o1, o2))
    assert phi[0] == 0
    for u in range(ball.size):
        assert sorted(phi[w] for w in ball.adj[u]) == list(other.adj[phi[u]])


@given(st.integers(0, 2**32), st.integers(2, 12), st.integers(1, 3))
def test_truncation_monotone(seed, n, r):
    G = random_graph(random.Random(seed), n, 3, 0.4)
    for v in range(n):
        big = extract_ball(G, v, r)
        for rp in range(r):
            assert canonical_key(truncate_ball(big, rp)) == canonical_key(extract_ball(G, v, rp))


@given(st.integers(0, 2**32), st.integers(2, 12))
def test_labels_refine(seed, n):
    rnd = random.Random(seed)
    G = random_graph(rnd, n, 3, 0.4)
    labels = [rnd.randint(1, 2) for _ in range(n)]
    lab = [canonical_key(extract_ball(G, v, 2, labels)) for v in range(n)]
    plain = [canonical_key(extract_ball(G, v, 2)) for v in range(n)]
    for i in range(n):
        for j in range(n):
            if lab[i] == lab[j]:
                assert plain[i] == plain[j]


def test_symmetric_balls_fast():
    # large automorphism groups must be pruned, not enumerated
    T = gen.torus(20, 20)
    assert len(ball_census(T, 5)) == 1
    G = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)], 3)
    assert len(ball_census(G, 1)) == 2
