import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import ktrees
from ktreepart.chordal import BuildOrder, BuildOrderError, recognize_ktree
from ktreepart.graph import Graph, connected_components
from ktreepart.harness import oracle_exists_partition
from ktreepart.partition import (
    HPartition,
    PartitionError,
    bag_is_connected_ttree,
    is_ltree,
    partition_width,
    quotient_graph,
    theorem1_partition,
    validate_hpartition,
    validate_theorem1,
)

K4 = Graph.complete([1, 2, 3, 4])
K4_ORDER = BuildOrder.from_steps(3, [(1, []), (2, [1]), (3, [1, 2]), (4, [1, 2, 3])])


def identity_partition(g):
    return HPartition(g, {v: frozenset({v}) for v in g.vertices})


def test_identity_partition_is_valid():
    g = Graph(range(5), [(0, 1), (1, 2), (3, 4)])
    assert validate_hpartition(g, identity_partition(g)).ok


def test_uncovered_edge_is_reported_with_witness():
    g = Graph([0, 1], [(0, 1)])
    p = HPartition(Graph([0, 1]), {0: frozenset({0}), 1: frozenset({1})})
    rep = validate_hpartition(g, p)
    assert not rep.ok
    assert rep.failed_tags() == ["edge"]
    assert rep.violations[0].witness == (0, 1, 0, 1)


def test_empty_graph_empty_partition():
    rep = validate_hpartition(Graph(), HPartition(Graph(), {}))
    assert rep.ok


@pytest.mark.parametrize(
    "bags, tag",
    [
        ({0: {0, 1}, 1: {1, 2, 3}}, "disjointness"),
        ({0: {0, 1, 2, 3}, 1: set()}, "nonempty"),
        ({0: {0}, 1: {1, 2}}, "coverage"),
        ({0: {0, 1, 2, 9}, 1: {3}}, "coverage"),
    ],
)
def test_partition_defects(bags, tag):
    g = Graph(range(4), [(0, 1), (1, 2), (2, 3)])
    p = HPartition.build(Graph([0, 1], [(0, 1)]), bags)
    rep = validate_hpartition(g, p)
    assert tag in rep.failed_tags()
    assert all(v.witness for v in rep.violations)


def test_bag_for_missing_node():
    g = Graph([0])
    rep = validate_hpartition(g, HPartition(Graph([0]), {0: frozenset({0}), 5: frozenset()}))
    assert "nodes" in rep.failed_tags()


def test_quotient_examples():
    g = Graph(range(4), [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert quotient_graph(g, {v: {v} for v in g.vertices}) == g
    assert quotient_graph(g, {0: set(g.vertices)}) == Graph([0])
    assert quotient_graph(K4, {0: {1, 3}, 1: {2, 4}}) == Graph([0, 1], [(0, 1)])


@pytest.mark.parametrize(
    "bags",
    [{0: {0}, 1: {0, 1}}, {0: {0}}, {0: {0, 1}, 1: set()}, {0: {0, 1, 7}}],
)
def test_quotient_rejects_non_partitions(bags):
    with pytest.raises(PartitionError):
        quotient_graph(Graph([0, 1], [(0, 1)]), bags)


def test_is_ltree_examples():
    assert is_ltree(Graph(range(4), [(0, 1), (1, 2), (1, 3)]), 1)
    assert not is_ltree(Graph.complete(range(3)), 1)
    assert is_ltree(Graph(range(6)), 0)


def test_bag_is_connected_ttree_examples():
    g = Graph(range(3), [(0, 1)])
    assert bag_is_connected_ttree(g, {2}, 0)
    assert bag_is_connected_ttree(g, {0, 1}, 1)
    assert not bag_is_connected_ttree(g, {0, 2}, 5)
    assert not bag_is_connected_ttree(Graph.complete(range(3)), {0, 1, 2}, 1)


def test_k4_trace():
    p = theorem1_partition(K4, K4_ORDER, 1)
    assert dict(p.bags) == {0: frozenset({1, 3}), 1: frozenset({2, 4})}
    assert p.host == Graph([0, 1], [(0, 1)])
    assert partition_width(p) == 2
    assert validate_theorem1(K4, p, 3, 1).ok
    # an independent brute-force search also finds a 2+2 split
    found = oracle_exists_partition(K4, 1, 1)
    assert sorted(len(b) for b in found.bags.values()) == [2, 2]


def test_empty_graph_partition():
    p = theorem1_partition(Graph(), BuildOrder(3, ()), 2)
    assert p.host == Graph() and not p.bags
    assert partition_width(p) == 0


def test_partition_width_singletons():
    assert partition_width(identity_partition(K4)) == 1


def test_rejects_bad_inputs():
    with pytest.raises(ValueError):
        theorem1_partition(K4, K4_ORDER, 4)
    with pytest.raises(BuildOrderError):
        theorem1_partition(Graph.complete(range(3)), K4_ORDER, 1)


def test_node_ids_are_creation_order():
    # star with centre 0: one Case-1 node per leaf when l = 1
    g = Graph(range(4), [(0, 1), (0, 2), (0, 3)])
    order = BuildOrder.from_steps(1, [(0, []), (3, [0]), (1, [0]), (2, [0])])
    p = theorem1_partition(g, order, 1)
    assert [sorted(p.bags[x]) for x in sorted(p.bags)] == [[0], [3], [1], [2]]


def test_case2_ties_go_to_lowest_node():
    # l=1, t=1: node 0 = {0}, node 1 = {1}; vertices 2, 3, 4 each meet both nodes once
    order = BuildOrder.from_steps(2, [(0, []), (1, [0]), (2, [0, 1]), (3, [1, 2]), (4, [1, 2])])
    g = order.replay()
    p = theorem1_partition(g, order, 1)
    assert dict(p.bags) == {0: frozenset({0, 2, 3, 4}), 1: frozenset({1})}
    assert validate_theorem1(g, p, 2, 1).ok


@given(ktrees(max_n=40, max_k=6), st.data())
def test_theorem1_end_to_end(pair, data):
    g, order = pair
    k = order.k
    l = data.draw(st.integers(0, k))
    p = theorem1_partition(g, order, l)
    rep = validate_theorem1(g, p, k, l)
    assert rep.ok, rep.render()
    assert quotient_graph(g, p.bags) == p.host


@given(ktrees(max_n=30, max_k=5))
def test_l_equals_k_gives_singletons(pair):
    g, order = pair
    p = theorem1_partition(g, order, order.k)
    assert all(len(b) == 1 for b in p.bags.values())
    relabel = {v: x for x, b in p.bags.items() for v in b}
    assert sorted(tuple(sorted((relabel[u], relabel[w]))) for u, w in g.edges()) == p.host.edges()


@given(ktrees(max_n=30, max_k=5))
def test_l_zero_gives_components(pair):
    g, order = pair
    p = theorem1_partition(g, order, 0)
    assert set(p.bags.values()) == {frozenset(c) for c in connected_components(g)}
    assert p.host.num_edges() == 0


@given(ktrees(max_n=30, max_k=5), st.data())
def test_deterministic(pair, data):
    g, order = pair
    l = data.draw(st.integers(0, order.k))
    assert theorem1_partition(g, order, l) == theorem1_partition(g, order, l)


@given(ktrees(max_n=30, max_k=5), st.data())
def test_recognised_order_works_too(pair, data):
    g, order = pair
    found = recognize_ktree(g, order.k)
    l = data.draw(st.integers(0, order.k))
    assert validate_theorem1(g, theorem1_partition(g, found, l), order.k, l).ok
