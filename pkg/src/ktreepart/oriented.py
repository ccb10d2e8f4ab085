"""Oriented k-trees and oriented l-tree-partitions.

An oriented k-tree is an acyclic orientation in which every in-neighbourhood
is a clique of size <= k.  Every oriented k-tree has an oriented
l-tree-partition whose bags induce weakly connected oriented (k - l)-trees
and in which each Q(x), the in-neighbours of bag x lying outside it, is a
clique of size <= k.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Mapping

from ktreepart.chordal import BuildOrder, BuildOrderError, RecognitionFailure
from ktreepart.graph import (
    OrientedGraph,
    find_directed_cycle,
    induced_subdigraph,
    is_weakly_connected,
    non_adjacent_pair,
    underlying_graph,
)
from ktreepart.partition import HPartition, ValidationReport, _check_kl, validate_hpartition


@dataclass(frozen=True)
class OrientedBuildOrder:
    """Steps ``(vertex, in_attachment)``: add ``vertex`` with an arc from each attachment member."""

    k: int
    steps: tuple[tuple[int, frozenset[int]], ...]

    @classmethod
    def from_steps(cls, k: int, steps: Iterable[tuple[int, Iterable[int]]]) -> OrientedBuildOrder:
        return cls(k, tuple((v, frozenset(att)) for v, att in steps))

    @classmethod
    def from_build_order(cls, order: BuildOrder) -> OrientedBuildOrder:
        return cls(order.k, order.steps)

    def replay(self) -> OrientedGraph:
        # Same legality rules as the undirected order; arcs point at the new vertex.
        BuildOrder(self.k, self.steps).replay()
        out: dict[int, set[int]] = {}
        for v, att in self.steps:
            out[v] = set()
            for u in att:
                out[u].add(v)
        return OrientedGraph._from_out(out)

    def check(self, d: OrientedGraph) -> None:
        """Raise BuildOrderError unless replaying reproduces ``d`` exactly."""
        if self.k < 0:
            raise BuildOrderError(f"k must be non-negative, got {self.k}")
        ins, outs = d._in, d._out
        seen: set[int] = set()
        for i, (v, att) in enumerate(self.steps):
            if v not in ins or v in seen:
                raise BuildOrderError(f"step {i}: vertex {v!r} is repeated or not in the digraph")
            if len(att) > self.k:
                raise BuildOrderError(f"step {i}: attachment {sorted(att)} larger than k={self.k}")
            if ins[v] != att or not att <= seen:
                raise BuildOrderError(f"step {i}: attachment of {v} differs from its earlier in-neighbours")
            members = list(att)
            for j, u in enumerate(members):
                for w in members[j + 1:]:
                    if w not in outs[u] and u not in outs[w]:
                        raise BuildOrderError(f"step {i}: attachment {sorted(att)} is not a clique")
            seen.add(v)
        if len(seen) != len(ins):
            raise BuildOrderError("build order does not cover every vertex of the digraph")


@dataclass(frozen=True)
class OrientedHPartition:
    host: OrientedGraph
    bags: Mapping[int, frozenset[int]]

    @classmethod
    def build(cls, host: OrientedGraph, bags: Mapping[int, Iterable[int]]) -> OrientedHPartition:
        return cls(host, {x: frozenset(bags[x]) for x in sorted(bags)})

    def undirected(self) -> HPartition:
        return HPartition(underlying_graph(self.host), self.bags)

    def node_of(self) -> dict[int, int]:
        return {v: x for x, bag in self.bags.items() for v in bag}

    def sorted_bags(self) -> list[tuple[int, list[int]]]:
        return [(x, sorted(self.bags[x])) for x in sorted(self.bags)]


def orient_from_buildorder(order: BuildOrder) -> OrientedGraph:
    """Orient every edge from the earlier-added endpoint to the later one."""
    return OrientedBuildOrder.from_build_order(order).replay()


def recognize_oriented_ktree(d: OrientedGraph, k: int) -> OrientedBuildOrder | RecognitionFailure:
    """Peel lowest-id sinks whose in-neighbourhood is a clique of size <= k."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    out, inn = d._out, d._in
    out_left = {v: len(out[v]) for v in d.vertices}
    heap = [v for v, c in out_left.items() if c == 0]
    heapq.heapify(heap)
    peeled = []
    while heap:
        v = heapq.heappop(heap)
        att = inn[v]
        if len(att) > k:
            return RecognitionFailure(
                "bad_in_neighborhood", (v,) + tuple(sorted(att)),
                f"sink {v} has {len(att)} in-neighbours, more than k={k}",
            )
        members = list(att)
        for i, a in enumerate(members):
            oa, ia = out[a], inn[a]
            for b in members[i + 1:]:
                if b not in oa and b not in ia:
                    pair = non_adjacent_pair(underlying_graph(d), att)
                    return RecognitionFailure(
                        "bad_in_neighborhood", (v,) + pair,
                        f"in-neighbours {pair[0]} and {pair[1]} of sink {v} are not adjacent",
                    )
        peeled.append((v, att))
        for u in att:
            out_left[u] -= 1
            if out_left[u] == 0:
                heapq.heappush(heap, u)
    if len(peeled) < len(out_left):
        cycle = find_directed_cycle(d)
        return RecognitionFailure("directed_cycle", tuple(cycle), "digraph has a directed cycle")
    return OrientedBuildOrder(k, tuple(reversed(peeled)))


def q_sets(d: OrientedGraph, bags: Mapping[int, Iterable[int]]) -> dict[int, frozenset[int]]:
    """Q(x): in-neighbours of members of bag x that lie outside bag x."""
    out = {}
    for x in sorted(bags):
        bag = set(bags[x])
        q: set[int] = set()
        for v in bag:
            q |= d._in[v]
        out[x] = frozenset(q - bag)
    return out


def theorem2_partition(
    d: OrientedGraph, order: OrientedBuildOrder, l: int, check_invariants: bool = True
) -> OrientedHPartition:
    """Oriented l-tree-partition with (k - l)-tree bags and small clique Q-sets.

    Same replay as the undirected construction except for Case 2: the nodes
    C meeting N-(v) induce a transitive tournament in the host, and v joins
    the bag of its sink.  New host arcs always point at the new node.  With
    ``check_invariants`` every step asserts the tournament shape, the bound
    |N-(v) & bag| <= k - l and that Q of the receiving node is unchanged.
    """
    order.check(d)
    k = order.k
    _check_kl(k, l)
    t = k - l
    node_of: dict[int, int] = {}
    bags: list[set[int]] = []
    out: list[set[int]] = []
    q: list[frozenset[int]] = []
    for v, att in order.steps:
        meet: dict[int, int] = {}
        for u in att:
            x = node_of[u]
            meet[x] = meet.get(x, 0) + 1
        if check_invariants:
            for x in meet:
                for z in meet:
                    if x < z and z not in out[x] and x not in out[z]:
                        raise AssertionError(f"vertex {v}: nodes {x} and {z} of C are not adjacent in the host")
        if len(meet) <= l:
            y = len(bags)
            bags.append({v})
            out.append(set())
            for x in meet:
                out[x].add(y)
            q.append(att)
        else:
            if check_invariants:
                if len(meet) != l + 1:
                    raise AssertionError(f"vertex {v}: {len(meet)} nodes meet N-(v), more than l+1={l + 1}")
                outdeg = sorted(len(out[x] & meet.keys()) for x in meet)
                if outdeg != list(range(len(meet))):
                    raise AssertionError(f"vertex {v}: nodes meeting N-(v) are not a transitive tournament")
            sinks = [x for x in sorted(meet) if not out[x] & meet.keys()]
            if not sinks:
                raise AssertionError(f"vertex {v}: tournament on C has no sink")
            y = sinks[0]
            if meet[y] > t:
                raise AssertionError(f"vertex {v}: sink bag meets N-(v) in {meet[y]} > t={t} vertices")
            if check_invariants:
                grown = q[y] | (att - bags[y])
                if grown != q[y]:
                    raise AssertionError(f"vertex {v}: Q({y}) changed from {sorted(q[y])} to {sorted(grown)}")
            bags[y].add(v)
        node_of[v] = y
    return OrientedHPartition(
        OrientedGraph._from_out({x: out[x] for x in range(len(out))}),
        {x: frozenset(b) for x, b in enumerate(bags)},
    )


def validate_oriented_partition(d: OrientedGraph, p: OrientedHPartition, k: int, l: int) -> ValidationReport:
    """All oriented-partition guarantees, recomputed from scratch.

    Checks, in order: the underlying H-partition clauses, arc consistency,
    host is an oriented l-tree, every bag induces a weakly connected oriented
    (k - l)-tree, and every Q(x) is a clique of size <= k.
    """
    _check_kl(k, l)
    t = k - l
    g = underlying_graph(d)
    rep = validate_hpartition(g, p.undirected())

    rep.passed("arc_consistency")
    node_of = {}
    for x in sorted(p.bags):
        for v in p.bags[x]:
            node_of.setdefault(v, x)
    for v, w in d.arcs():
        x, y = node_of.get(v), node_of.get(w)
        if x is None or y is None or x == y:
            continue
        if p.host.has_arc(y, x):
            rep.fail("arc_consistency", f"arc {v}->{w} runs from bag {x} to bag {y} but host has arc {y}->{x}",
                     (v, w, x, y))

    rep.passed("host_ltree")
    found = recognize_oriented_ktree(p.host, l)
    if isinstance(found, RecognitionFailure):
        rep.fail("host_ltree", f"host is not an oriented {l}-tree ({found.kind})", found.vertices)

    rep.passed("bag_ttree")
    for x in sorted(p.bags):
        bag = [v for v in p.bags[x] if v in d]
        if len(bag) <= 1:
            # a lone vertex (or nothing, already reported) is a t-tree for every t
            continue
        sub = induced_subdigraph(d, bag)
        if not is_weakly_connected(sub):
            rep.fail("bag_ttree", f"bag {x} is not weakly connected", sorted(bag))
            continue
        found = recognize_oriented_ktree(sub, t)
        if isinstance(found, RecognitionFailure):
            rep.fail("bag_ttree", f"bag {x} is not an oriented {t}-tree ({found.kind})", found.vertices)

    rep.passed("q_clique")
    known = {x: [v for v in bag if v in d] for x, bag in p.bags.items()}
    for x, qx in q_sets(d, known).items():
        if len(qx) > k:
            rep.fail("q_clique", f"Q({x}) has {len(qx)} vertices, more than k={k}", sorted(qx))
            continue
        pair = non_adjacent_pair(g, qx)
        if pair is not None:
            rep.fail("q_clique", f"Q({x}) is not a clique: {pair[0]} and {pair[1]} are not adjacent", (x,) + pair)
    return rep
