import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from corpus import random_graph, small_corpus
from hyperfin import generators as gen
from hyperfin.graph import (DegreeExceeded, DuplicateEdge, EdgeSet, Graph, GraphError, LoopEdge, ParseError,
                            UnknownEdge, components, disjoint_union, load_edge_list, remove_edges,
                            remove_vertex_edges, serialize)


@st.composite
def graphs(draw, max_n=20, d=4):
    n = draw(st.integers(0, max_n))
    seed = draw(st.integers(0, 2**32))
    p = draw(st.floats(0, 0.5))
    return random_graph(random.Random(seed), n, d, p)


def test_load_path():
    G = load_edge_list("3 2\n0 1\n1 2")
    assert G.n == 3 and G.d == 2 and G.edges() == ((0, 1), (1, 2))


def test_load_isolated_vertex():
    G = load_edge_list("1 3\n")
    assert G.n == 1 and G.m == 0 and G.d == 3


def test_load_loop():
    with pytest.raises(LoopEdge) as exc:
        load_edge_list("2 1\n0 0")
    assert exc.value.v == 0


def test_load_errors():
    with pytest.raises(DuplicateEdge):
        load_edge_list("3 2\n0 1\n1 0")
    with pytest.raises(DegreeExceeded):
        load_edge_list("4 2\n0 1\n0 2\n0 3")
    with pytest.raises(ParseError) as exc:
        load_edge_list("3 2\n0 1\nx y")
    assert exc.value.line == 3
    with pytest.raises(ParseError):
        load_edge_list("3 2\n0 5")
    with pytest.raises(ParseError):
        load_edge_list("")


def test_degree_override_and_comments():
    G = load_edge_list(b"# a comment\n3 1\n0 1\n1 2\n", d=2)
    assert G.d == 2 and G.m == 2


def test_remove_edges_examples():
    C4 = gen.cycle(4)
    P = remove_edges(C4, EdgeSet.of([(0, 1)]))
    assert P.edges() == ((0, 3), (1, 2), (2, 3))
    assert remove_edges(C4, EdgeSet.of([])) == C4
    assert remove_edges(C4, C4.edges()).m == 0
    with pytest.raises(UnknownEdge):
        remove_edges(C4, [(0, 2)])


def test_components_examples():
    assert components(gen.cycle(4)) == [[0, 1, 2, 3]]
    G = Graph.from_edges(4, [(0, 1), (2, 3)], 1)
    assert components(G) == [[0, 1], [2, 3]]


def test_block_cut_components_against_networkx():
    T = gen.torus(60, 60)
    cut = [(u, v) for u, v in T.edges() if (u % 60) // 5 != (v % 60) // 5 or (u // 60) // 5 != (v // 60) // 5]
    comps = components(remove_edges(T, cut))
    assert max(len(c) for c in comps) <= 25
    g = nx.Graph()
    g.add_nodes_from(range(T.n))
    g.add_edges_from(set(T.edges()) - set(cut))
    assert sorted(sorted(c) for c in nx.connected_components(g)) == comps


def test_invalid_graph_construction():
    with pytest.raises(GraphError):
        Graph(2, ((1,), ()), 2)  # asymmetric
    with pytest.raises(GraphError):
        Graph(1, ((),), 0)


def test_edgeset_orientation():
    assert EdgeSet.of([(2, 1)]) == EdgeSet.of([(1, 2)])
    assert (2, 1) in EdgeSet.of([(1, 2)])


def test_remove_vertex_edges_and_union():
    G = disjoint_union(gen.path(3), gen.cycle(3))
    assert G.n == 6 and G.m == 5
    H = remove_vertex_edges(G, [1])
    assert H.m == 3


@given(graphs())
def test_roundtrip(G):
    assert load_edge_list(serialize(G), G.d) == G


def test_roundtrip_corpus():
    for G in small_corpus(200, seed=1):
        text = serialize(G)
        assert load_edge_list(text) == G
        assert serialize(load_edge_list(text)) == text


@given(graphs())
def test_remove_identities(G):
    assert remove_edges(G, EdgeSet.of([])) == G
    assert components(remove_edges(G, G.edges())) == [[v] for v in range(G.n)]


@given(graphs())
def test_components_partition(G):
    comps = components(G)
    assert sorted(v for c in comps for v in c) == list(range(G.n))
    assert [c[0] for c in comps] == sorted(c[0] for c in comps)
    for c in comps:
        inside = set(c)
        assert all(u in inside for v in c for u in G.adj[v])
