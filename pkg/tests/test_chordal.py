import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs, ktrees
from ktreepart.chordal import (
    BuildOrder,
    BuildOrderError,
    NotChordalError,
    RecognitionFailure,
    chordless_cycle,
    is_chordal,
    is_perfect_elimination_ordering,
    mcs_order,
    recognize_ktree,
    treewidth_chordal,
)
from ktreepart.graph import Graph, is_clique
from ktreepart.harness import all_labeled_graphs, chordless_cycle_bruteforce, clique_number_bruteforce

C4 = Graph(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)])


def cycle_graph(n):
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def assert_chordless_cycle(g, cycle):
    m = len(cycle)
    assert m >= 4 and len(set(cycle)) == m
    for i, j in itertools.combinations(range(m), 2):
        consecutive = j - i == 1 or (i == 0 and j == m - 1)
        assert g.has_edge(cycle[i], cycle[j]) == consecutive


def assert_certificate(g, k, failure):
    if failure.kind == "chordless_cycle":
        assert_chordless_cycle(g, failure.vertices)
    else:
        assert failure.kind == "large_clique"
        assert len(failure.vertices) == k + 2 and is_clique(g, failure.vertices)


def test_mcs_examples():
    assert mcs_order(Graph()) == []
    assert mcs_order(Graph.complete(range(3))) == [0, 1, 2]
    g = Graph([4, 1, 7], [(4, 7)])
    assert sorted(mcs_order(g)) == [1, 4, 7]


def test_mcs_prefers_most_numbered_neighbours():
    # path 0-1-2-3 plus isolated 9: after 0, vertex 1 has weight 1 and wins over 2, 3, 9
    g = Graph([0, 1, 2, 3, 9], [(0, 1), (1, 2), (2, 3)])
    assert mcs_order(g) == [0, 1, 2, 3, 9]


def test_is_chordal_examples():
    assert not is_chordal(C4)
    tree = Graph(range(6), [(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)])
    assert is_chordal(tree)
    c4_chord = Graph(range(4), [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    assert is_chordal(c4_chord)
    assert chordless_cycle_bruteforce(c4_chord) is None
    assert chordless_cycle_bruteforce(C4) is not None


@pytest.mark.parametrize("k", range(6))
def test_recognize_complete_graph(k):
    g = Graph.complete(range(k + 1))
    order = recognize_ktree(g, k)
    assert isinstance(order, BuildOrder)
    assert [len(att) for _, att in order.steps] == list(range(k + 1))
    assert order.replay() == g


def test_recognize_c4_gives_cycle():
    failure = recognize_ktree(C4, 2)
    assert isinstance(failure, RecognitionFailure)
    assert failure.kind == "chordless_cycle"
    assert_chordless_cycle(C4, failure.vertices)


def test_recognize_edgeless_is_0_tree():
    order = recognize_ktree(Graph(range(5)), 0)
    assert isinstance(order, BuildOrder)
    assert all(not att for _, att in order.steps)
    assert sorted(order.order) == list(range(5))


def test_recognize_reports_large_clique():
    g = Graph.complete([2, 4, 6, 8, 10])
    failure = recognize_ktree(g, 2)
    assert failure.kind == "large_clique"
    assert_certificate(g, 2, failure)


def test_recognize_forest_is_1_tree():
    forest = Graph(range(7), [(0, 1), (1, 2), (4, 5)])
    assert isinstance(recognize_ktree(forest, 1), BuildOrder)
    assert isinstance(recognize_ktree(Graph(range(3), [(0, 1)]), 0), RecognitionFailure)


def test_recognize_rejects_negative_k():
    with pytest.raises(ValueError):
        recognize_ktree(Graph(), -1)


def test_peel_order_is_lowest_id_first():
    # path 0-1-2: 0 peels first, then 1, then 2; build order is the reverse
    order = recognize_ktree(Graph(range(3), [(0, 1), (1, 2)]), 1)
    assert order.order == [2, 1, 0]
    assert order.steps[2] == (0, frozenset({1}))


def test_treewidth_examples():
    assert treewidth_chordal(Graph.complete(range(5))) == 4
    assert treewidth_chordal(Graph(range(4), [(0, 1), (1, 2), (1, 3)])) == 1
    assert treewidth_chordal(Graph()) == -1
    assert treewidth_chordal(Graph(range(3))) == 0
    with pytest.raises(NotChordalError) as info:
        treewidth_chordal(cycle_graph(6))
    assert_chordless_cycle(cycle_graph(6), info.value.cycle)


@pytest.mark.parametrize(
    "steps, message",
    [
        ([(0, []), (0, [])], "twice"),
        ([(0, []), (1, [2])], "not yet added"),
        ([(0, []), (1, []), (2, [0, 1])], "not a clique"),
        ([(0, []), (1, [0]), (2, [0, 1]), (3, [0, 1, 2])], "larger than k"),
    ],
)
def test_invalid_build_orders(steps, message):
    with pytest.raises(BuildOrderError, match=message):
        BuildOrder.from_steps(2, steps).replay()


def test_build_order_check_detects_other_graph():
    order = BuildOrder.from_steps(1, [(0, []), (1, [0])])
    order.check(Graph([0, 1], [(0, 1)]))
    with pytest.raises(BuildOrderError):
        order.check(Graph([0, 1]))


@given(ktrees())
def test_roundtrip_replay_reproduces_graph(pair):
    g, order = pair
    found = recognize_ktree(g, order.k)
    assert isinstance(found, BuildOrder)
    assert found.k == order.k
    assert found.replay() == g
    assert sorted(found.order) == list(g.vertices)


@given(ktrees(), st.randoms(use_true_random=False))
def test_greedy_safety_any_small_simplicial_vertex(pair, rnd):
    g, order = pair
    k = order.k
    adj = {v: set(n) for v, n in g.adjacency().items()}
    while adj:
        ok = [v for v in adj if len(adj[v]) <= k
              and all(b in adj[a] for a, b in itertools.combinations(adj[v], 2))]
        assert ok, "peeling got stuck on a genuine k-tree"
        v = rnd.choice(sorted(ok))
        for w in adj.pop(v):
            adj[w].discard(v)


@given(graphs(max_vertices=8))
def test_is_chordal_matches_bruteforce_sampled(g):
    assert is_chordal(g) == (chordless_cycle_bruteforce(g) is None)


@settings(max_examples=60)
@given(graphs(max_vertices=14))
def test_is_chordal_matches_networkx(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges())
    assert is_chordal(g) == nx.is_chordal(h)


@given(graphs(max_vertices=9))
def test_failure_certificates_are_valid(g):
    cycle = chordless_cycle(g)
    if cycle is not None:
        assert_chordless_cycle(g, cycle)
    for k in range(5):
        found = recognize_ktree(g, k)
        if isinstance(found, RecognitionFailure):
            assert_certificate(g, k, found)
        else:
            assert found.replay() == g


@given(graphs(max_vertices=9))
def test_recognition_monotone_in_k(g):
    results = [isinstance(recognize_ktree(g, k), BuildOrder) for k in range(8)]
    assert results == sorted(results)


@given(graphs(max_vertices=9))
def test_mcs_gives_peo_exactly_for_chordal_graphs(g):
    order = mcs_order(g)
    assert sorted(order) == list(g.vertices)
    assert is_perfect_elimination_ordering(g, order[::-1]) == is_chordal(g)


def test_recognition_iff_chordal_and_small_clique_exhaustive():
    for n in range(7):
        for g in all_labeled_graphs(n):
            chordal = chordless_cycle_bruteforce(g) is None
            omega = clique_number_bruteforce(g)
            for k in range(n):
                assert isinstance(recognize_ktree(g, k), BuildOrder) == (chordal and omega <= k + 1)
            if chordal:
                assert treewidth_chordal(g) == omega - 1


@given(ktrees(max_n=25, max_k=4), graphs(max_vertices=6))
def test_check_agrees_with_replay(pair, other):
    g, order = pair
    order.check(g)
    if other != g:
        with pytest.raises(BuildOrderError):
            order.check(other)
    if g.num_edges():
        u, w = g.edges()[0]
        with pytest.raises(BuildOrderError):
            order.check(Graph(g.vertices, [e for e in g.edges() if e != (u, w)]))
