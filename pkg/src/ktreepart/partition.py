"""H-partitions of graphs and the l-tree-partition construction for k-trees.

Every k-tree has an l-tree-partition (0 <= l <= k) whose bags each induce a
connected t-tree with t = floor(k / (l + 1)).  :func:`theorem1_partition`
builds one by replaying a build order and :func:`validate_ltree_partition`
checks every clause of that statement independently of the construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from ktreepart.chordal import BuildOrder, recognize_ktree
from ktreepart.graph import Graph, GraphError, induced_subgraph, is_connected


class PartitionError(GraphError):
    """Bags that do not form a partition of the vertex set."""


@dataclass(frozen=True)
class HPartition:
    """A host graph plus one bag (set of vertices of G) per host node."""

    host: Graph
    bags: Mapping[int, frozenset[int]]

    @classmethod
    def build(cls, host: Graph, bags: Mapping[int, Iterable[int]]) -> HPartition:
        return cls(host, {x: frozenset(bags[x]) for x in sorted(bags)})

    def node_of(self) -> dict[int, int]:
        return {v: x for x, bag in self.bags.items() for v in bag}

    def sorted_bags(self) -> list[tuple[int, list[int]]]:
        return [(x, sorted(self.bags[x])) for x in sorted(self.bags)]


@dataclass(frozen=True)
class Violation:
    tag: str
    detail: str
    witness: tuple = ()


@dataclass
class ValidationReport:
    """Outcome of every check run; ``ok`` iff no violations were recorded.

    ``checks`` keeps each check tag in run order mapped to pass/fail.  Only
    the first violation of each check is kept as its witness.
    """

    checks: dict[str, bool] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def passed(self, tag: str) -> None:
        self.checks.setdefault(tag, True)

    def fail(self, tag: str, detail: str, witness=()) -> None:
        if self.checks.get(tag) is False:
            return
        self.checks[tag] = False
        self.violations.append(Violation(tag, detail, tuple(witness)))

    def failed_tags(self) -> list[str]:
        return [v.tag for v in self.violations]

    def render(self) -> str:
        lines = []
        for tag, good in self.checks.items():
            lines.append(f"{'PASS' if good else 'FAIL'} {tag}")
            for v in self.violations:
                if v.tag == tag:
                    lines.append(f"     {v.detail}; witness {list(v.witness)}")
        lines.append("OK" if self.ok else "INVALID")
        return "\n".join(lines)


def validate_hpartition(g: Graph, p: HPartition, report: ValidationReport | None = None) -> ValidationReport:
    """Check that ``p`` is an H-partition of ``g`` with no empty bags."""
    rep = ValidationReport() if report is None else report
    host, bags = p.host, p.bags

    for tag in ("nodes", "coverage", "disjointness", "nonempty", "edge"):
        rep.passed(tag)

    for x in sorted(bags):
        if x not in host:
            rep.fail("nodes", f"bag indexed by {x} which is not a host node", (x,))
    for x in host.vertices:
        if x not in bags:
            rep.fail("nonempty", f"host node {x} has no bag", (x,))
        elif not bags[x]:
            rep.fail("nonempty", f"bag of node {x} is empty", (x,))

    node_of: dict[int, int] = {}
    for x in sorted(bags):
        for v in sorted(bags[x]):
            if v not in g:
                rep.fail("coverage", f"bag {x} holds {v} which is not a vertex of G", (v, x))
            elif v in node_of:
                rep.fail("disjointness", f"vertex {v} lies in bags {node_of[v]} and {x}", (v, node_of[v], x))
            else:
                node_of[v] = x
    for v in g.vertices:
        if v not in node_of:
            rep.fail("coverage", f"vertex {v} lies in no bag", (v,))

    for v, w in g.edges():
        x, y = node_of.get(v), node_of.get(w)
        if x is None or y is None or x == y:
            continue
        if not host.has_edge(x, y):
            rep.fail("edge", f"edge {v}-{w} joins bags {x} and {y} but host has no edge {x}-{y}", (v, w, x, y))
    return rep


def quotient_graph(g: Graph, bags: Mapping[int, Iterable[int]]) -> Graph:
    """Contract each bag to its node; loops dropped, parallel edges merged."""
    node_of: dict[int, int] = {}
    for x in sorted(bags):
        members = list(bags[x])
        if not members:
            raise PartitionError(f"bag {x} is empty")
        for v in members:
            if v not in g:
                raise PartitionError(f"bag {x} holds unknown vertex {v!r}")
            if v in node_of:
                raise PartitionError(f"vertex {v} lies in bags {node_of[v]} and {x}")
            node_of[v] = x
    for v in g.vertices:
        if v not in node_of:
            raise PartitionError(f"vertex {v} lies in no bag")
    adj: dict[int, set[int]] = {x: set() for x in bags}
    for v, nbrs in g._adj.items():
        x = node_of[v]
        for w in nbrs:
            y = node_of[w]
            if x != y:
                adj[x].add(y)
    return Graph._from_adj(adj)


def is_ltree(g: Graph, l: int) -> bool:
    return isinstance(recognize_ktree(g, l), BuildOrder)


def bag_is_connected_ttree(g: Graph, bag: Iterable[int], t: int) -> bool:
    bag = list(bag)
    if len(bag) == 1 and bag[0] in g:
        return t >= 0
    h = induced_subgraph(g, bag)
    return is_connected(h) and isinstance(recognize_ktree(h, t), BuildOrder)


def partition_width(p: HPartition) -> int:
    return max((len(b) for b in p.bags.values()), default=0)


def tree_width_parameter(k: int, l: int) -> int:
    """Bag parameter t = floor(k / (l + 1)) for an l-tree-partition of a k-tree."""
    _check_kl(k, l)
    return k // (l + 1)


def _check_kl(k: int, l: int) -> None:
    if not 0 <= l <= k:
        raise ValueError(f"need 0 <= l <= k, got k={k}, l={l}")


def validate_ltree_partition(g: Graph, p: HPartition, l: int, t: int) -> ValidationReport:
    """H-partition checks plus: host is an l-tree, every bag a connected t-tree."""
    rep = validate_hpartition(g, p)
    rep.passed("host_ltree")
    found = recognize_ktree(p.host, l)
    if not isinstance(found, BuildOrder):
        rep.fail("host_ltree", f"host is not a {l}-tree ({found.kind})", found.vertices)
    rep.passed("bag_ttree")
    for x in sorted(p.bags):
        bag = [v for v in p.bags[x] if v in g]
        h = induced_subgraph(g, bag)
        if not is_connected(h):
            rep.fail("bag_ttree", f"bag {x} does not induce a connected graph", sorted(bag))
            continue
        found = recognize_ktree(h, t)
        if not isinstance(found, BuildOrder):
            rep.fail("bag_ttree", f"bag {x} does not induce a {t}-tree ({found.kind})", found.vertices)
    return rep


def validate_theorem1(g: Graph, p: HPartition, k: int, l: int) -> ValidationReport:
    return validate_ltree_partition(g, p, l, tree_width_parameter(k, l))


def theorem1_partition(g: Graph, order: BuildOrder, l: int, check_invariants: bool = True) -> HPartition:
    """l-tree-partition of a k-tree whose bags induce connected floor(k/(l+1))-trees.

    Replays ``order`` (whose ``k`` is the declared parameter).  For each new
    vertex v, C is the set of nodes whose bags meet N(v).  If |C| <= l a new
    node adjacent to all of C receives the bag {v}; otherwise |C| = l + 1 and v
    joins the bag of a node of C meeting N(v) in at most t vertices (the one
    with the smallest intersection, lowest node id on ties).  Nodes are
    numbered 0, 1, 2, ... in creation order.
    """
    order.check(g)
    k = order.k
    t = tree_width_parameter(k, l)
    node_of: dict[int, int] = {}
    bags: list[set[int]] = []
    host: list[set[int]] = []
    for v, att in order.steps:
        meet: dict[int, int] = {}
        for u in att:
            x = node_of[u]
            meet[x] = meet.get(x, 0) + 1
        if check_invariants:
            if len(meet) > l + 1:
                raise AssertionError(f"vertex {v}: {len(meet)} nodes meet N(v), more than l+1={l + 1}")
            for x in meet:
                hx = host[x]
                for z in meet:
                    if x < z and z not in hx:
                        raise AssertionError(f"vertex {v}: nodes {x} and {z} of C are not adjacent in the host")
        if len(meet) <= l:
            y = len(bags)
            bags.append({v})
            host.append(set(meet))
            for x in meet:
                host[x].add(y)
        else:
            y = min(meet, key=lambda x: (meet[x], x))
            if meet[y] > t:
                raise AssertionError(f"vertex {v}: every node of C meets N(v) in more than t={t} vertices")
            bags[y].add(v)
        node_of[v] = y
    return HPartition(
        Graph._from_adj({x: host[x] for x in range(len(host))}),
        {x: frozenset(b) for x, b in enumerate(bags)},
    )
