import pytest
from hypothesis import given, strategies as st

from hyperfin import generators as gen
from hyperfin.graph import Graph, GraphError
from hyperfin.partition import Infeasible, iso_peel


def test_small_families():
    assert gen.cycle(3).edges() == ((0, 1), (0, 2), (1, 2))
    T = gen.torus(3, 3)
    assert T.n == 9 and T.m == 18 and all(T.degree(v) == 4 for v in range(9))
    assert gen.cycle(5).d == 2 and gen.path(5).d == 2 and gen.grid(3, 3).d == 4


def test_grid_2x2_is_c4():
    G = gen.grid(2, 2)
    assert G.m == 4 and all(G.degree(v) == 2 for v in range(4))


def test_size_errors():
    with pytest.raises(gen.SizeTooSmall):
        gen.cycle(2)
    with pytest.raises(gen.SizeTooSmall):
        gen.path(0)
    with pytest.raises(gen.SizeTooSmall):
        gen.torus(2, 5)


def test_leafed_line_counts():
    G = gen.leafed_line(5)
    assert (G.n, G.m, G.d) == (18, 17, 4)
    star = gen.leafed_line(0)
    assert star.n == 3 and sorted(star.degree(v) for v in range(3)) == [1, 1, 2]


@given(st.integers(0, 200))
def test_leafed_line_two_thirds(n):
    G = gen.leafed_line(n)
    leaves = sum(1 for v in range(G.n) if G.degree(v) == 1)
    assert 3 * leaves == 2 * G.n


def test_random_regular():
    K4 = gen.random_regular(4, 3, 5)
    assert K4.m == 6
    G = gen.random_regular(100, 3, 1)
    assert all(G.degree(v) == 3 for v in range(100))
    assert gen.random_regular(100, 3, 1) == G
    assert gen.random_regular(100, 3, 2) != G
    with pytest.raises(GraphError):
        gen.random_regular(5, 3, 0)


def test_random_regular_200_has_no_small_sparse_set():
    G = gen.random_regular(200, 3, 0)
    with pytest.raises(Infeasible):
        iso_peel(G, 0.05, 50, 0)


def test_folner_box():
    assert gen.folner_box(2).m == 4
    B = gen.folner_box(10)
    assert (B.n, B.m) == (100, 180)
    prev = None
    for k in range(2, 12):
        B = gen.folner_box(k)
        boundary = sum(1 for v in range(B.n) if B.degree(v) < 4)
        assert boundary == 4 * (k - 1)
        frac = boundary / B.n
        assert prev is None or frac < prev
        prev = frac


@given(st.integers(3, 12), st.integers(3, 12))
def test_torus_regular(w, h):
    T = gen.torus(w, h)
    assert isinstance(T, Graph) and all(T.degree(v) == 4 for v in range(T.n))


@given(st.integers(0, 30), st.integers(0, 1000))
def test_rewire_preserves_degrees(k, seed):
    G = gen.grid(6, 6)
    H = gen.rewire(G, k, seed)
    assert [G.degree(v) for v in range(G.n)] == [H.degree(v) for v in range(H.n)]
    assert H == gen.rewire(G, k, seed)


def test_disjoint_copies():
    G = gen.disjoint_copies(gen.cycle(4), 3)
    assert G.n == 12 and G.m == 12
