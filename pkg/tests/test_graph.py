import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from ktreepart.graph import (
    Graph,
    GraphError,
    OrientedGraph,
    connected_components,
    find_directed_cycle,
    induced_subgraph,
    is_acyclic,
    is_clique,
    is_connected,
    underlying_graph,
)

TRIANGLE = Graph([1, 2, 3], [(1, 2), (2, 3), (1, 3)])
PATH = Graph([1, 2, 3], [(1, 2), (2, 3)])


def test_is_clique_examples():
    assert is_clique(TRIANGLE, {1, 2, 3})
    assert is_clique(PATH, set())
    assert is_clique(PATH, {2})
    assert not is_clique(PATH, {1, 3})


def test_is_clique_unknown_vertex():
    with pytest.raises(GraphError):
        is_clique(PATH, {1, 99})


def test_induced_subgraph_examples():
    k4 = Graph.complete(range(4))
    assert induced_subgraph(k4, {0, 2, 3}) == Graph.complete([0, 2, 3])
    assert induced_subgraph(k4, set()) == Graph()
    assert induced_subgraph(PATH, {1, 3}) == Graph([1, 3])
    with pytest.raises(GraphError):
        induced_subgraph(PATH, {7})


def test_is_connected_examples():
    assert is_connected(Graph())
    assert is_connected(Graph([5]))
    assert not is_connected(Graph([0, 1]))


def test_underlying_graph_examples():
    tt = OrientedGraph([0, 1, 2], [(0, 1), (0, 2), (1, 2)])
    assert underlying_graph(tt) == Graph.complete(range(3))
    assert underlying_graph(OrientedGraph(range(4))) == Graph(range(4))
    assert underlying_graph(OrientedGraph([3, 8], [(8, 3)])) == Graph([3, 8], [(3, 8)])


def test_is_acyclic_examples():
    assert is_acyclic(OrientedGraph([0, 1, 2], [(0, 1), (0, 2), (1, 2)]))
    c3 = OrientedGraph([0, 1, 2], [(0, 1), (1, 2), (2, 0)])
    assert not is_acyclic(c3)
    cycle = find_directed_cycle(c3)
    assert all(c3.has_arc(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle)))
    assert is_acyclic(OrientedGraph())


@pytest.mark.parametrize(
    "vertices, edges",
    [
        ([0, 0], []),
        ([0, 1], [(0, 0)]),
        ([0, 1], [(0, 1), (1, 0)]),
        ([0, 1], [(0, 2)]),
        ([-1], []),
        ([True], []),
    ],
)
def test_graph_rejects_malformed_input(vertices, edges):
    with pytest.raises(GraphError):
        Graph(vertices, edges)


def test_oriented_graph_rejects_digons():
    with pytest.raises(GraphError):
        OrientedGraph([0, 1], [(0, 1), (1, 0)])


def test_iteration_is_ascending():
    g = Graph([9, 2, 5], [(9, 2), (5, 9)])
    assert g.vertices == (2, 5, 9)
    assert g.edges() == [(2, 9), (5, 9)]
    assert g.max_degree() == 2


@given(graphs())
def test_clique_iff_induced_subgraph_complete(g):
    for r in range(len(g) + 1):
        for s in itertools.combinations(g.vertices, r):
            h = induced_subgraph(g, s)
            assert is_clique(g, s) == (h.num_edges() == r * (r - 1) // 2)


@given(graphs(), st.randoms())
def test_acyclic_orientations_forget_back(g, rnd):
    order = list(g.vertices)
    rnd.shuffle(order)
    pos = {v: i for i, v in enumerate(order)}
    d = OrientedGraph(g.vertices, [(u, w) if pos[u] < pos[w] else (w, u) for u, w in g.edges()])
    assert is_acyclic(d)
    assert underlying_graph(d) == g


def _union_find_components(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, w in edges:
        parent[find(u)] = find(w)
    return len({find(x) for x in range(n)})


def test_is_connected_matches_union_find_exhaustively():
    # Every labelled graph up to 6 vertices, then every unlabelled 7-vertex graph.
    for n in range(7):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = [p for i, p in enumerate(pairs) if mask >> i & 1]
            g = Graph(range(n), edges)
            assert is_connected(g) == (_union_find_components(n, edges) <= 1)
    seven = [h for h in nx.graph_atlas_g() if h.number_of_nodes() == 7]
    assert len(seven) == 1044
    for h in seven:
        edges = list(h.edges())
        assert is_connected(Graph(h.nodes(), edges)) == (_union_find_components(7, edges) == 1)


@given(graphs())
def test_components_partition_vertices(g):
    comps = connected_components(g)
    assert sorted(v for c in comps for v in c) == list(g.vertices)
    assert all(is_connected(induced_subgraph(g, c)) for c in comps)
