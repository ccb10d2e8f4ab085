"""Chordality, k-tree recognition and build orders.

A graph is a k-tree (in the sense used throughout this package) when it is
chordal and has no (k+2)-clique, equivalently when it can be grown from the
empty graph by repeatedly adding a vertex joined to a clique of size <= k.
Note that this allows disconnected graphs: every forest is a 1-tree.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from ktreepart.graph import Graph, GraphError, induced_subgraph, shortest_path


class BuildOrderError(ValueError):
    """A build order that does not describe a valid k-tree construction."""


class NotChordalError(ValueError):
    def __init__(self, cycle: list[int]):
        super().__init__(f"graph is not chordal; chordless cycle {cycle}")
        self.cycle = cycle


@dataclass(frozen=True)
class BuildOrder:
    """Steps ``(vertex, attachment)``: add ``vertex`` joined to every member of ``attachment``."""

    k: int
    steps: tuple[tuple[int, frozenset[int]], ...]

    @classmethod
    def from_steps(cls, k: int, steps: Iterable[tuple[int, Iterable[int]]]) -> BuildOrder:
        return cls(k, tuple((v, frozenset(att)) for v, att in steps))

    @property
    def order(self) -> list[int]:
        return [v for v, _ in self.steps]

    def replay(self) -> Graph:
        """Grow the graph step by step, checking every step is legal."""
        if self.k < 0:
            raise BuildOrderError(f"k must be non-negative, got {self.k}")
        adj: dict[int, set[int]] = {}
        for i, (v, att) in enumerate(self.steps):
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise BuildOrderError(f"step {i}: bad vertex id {v!r}")
            if v in adj:
                raise BuildOrderError(f"step {i}: vertex {v} added twice")
            if len(att) > self.k:
                raise BuildOrderError(f"step {i}: attachment {sorted(att)} larger than k={self.k}")
            members = list(att)
            for j, u in enumerate(members):
                nu = adj.get(u)
                if nu is None:
                    raise BuildOrderError(f"step {i}: attachment vertex {u!r} not yet added")
                for w in members[j + 1:]:
                    if w not in nu:
                        raise BuildOrderError(f"step {i}: attachment {sorted(att)} is not a clique")
            adj[v] = set(att)
            for u in att:
                adj[u].add(v)
        return Graph._from_adj(adj)

    def check(self, g: Graph) -> None:
        """Raise BuildOrderError unless replaying reproduces ``g`` exactly.

        Walks the steps against ``g`` directly instead of building a copy:
        each attachment must be a clique of at most k vertices and equal the
        neighbours of the new vertex among those already added.
        """
        if self.k < 0:
            raise BuildOrderError(f"k must be non-negative, got {self.k}")
        adj = g._adj
        seen: set[int] = set()
        for i, (v, att) in enumerate(self.steps):
            if v not in adj or v in seen:
                raise BuildOrderError(f"step {i}: vertex {v!r} is repeated or not in the graph")
            if len(att) > self.k:
                raise BuildOrderError(f"step {i}: attachment {sorted(att)} larger than k={self.k}")
            if adj[v] & seen != att:
                raise BuildOrderError(f"step {i}: attachment of {v} differs from its earlier neighbours")
            _require_clique(adj, att, i)
            seen.add(v)
        if len(seen) != len(adj):
            raise BuildOrderError("build order does not cover every vertex of the graph")


def _require_clique(adj, att, i: int) -> None:
    members = list(att)
    for j, u in enumerate(members):
        nu = adj[u]
        for w in members[j + 1:]:
            if w not in nu:
                raise BuildOrderError(f"step {i}: attachment {sorted(att)} is not a clique")


@dataclass(frozen=True)
class RecognitionFailure:
    """Certificate that a graph is not a k-tree.

    ``kind`` is ``"chordless_cycle"`` (vertices listed around the cycle),
    ``"large_clique"`` (a clique of size k+2), ``"directed_cycle"`` or
    ``"bad_in_neighborhood"`` for digraphs, or ``"dead_end"`` (the set of
    vertices left when peeling got stuck; never produced for genuine input).
    """

    kind: str
    vertices: tuple[int, ...]
    detail: str = ""


def mcs_order(g: Graph) -> list[int]:
    """Maximum cardinality search, ties broken by ascending vertex id."""
    weight = dict.fromkeys(g.vertices, 0)
    heap = [(0, v) for v in g.vertices]
    heapq.heapify(heap)
    done: set[int] = set()
    order = []
    adj = g._adj
    while heap:
        negw, v = heapq.heappop(heap)
        if v in done or -negw != weight[v]:
            continue
        done.add(v)
        order.append(v)
        for w in adj[v]:
            if w not in done:
                weight[w] += 1
                heapq.heappush(heap, (-weight[w], w))
    return order


def _peo_violation(g: Graph, peo: list[int]) -> tuple[int, int, int] | None:
    # Tarjan-Yannakakis check; returns (v, u, w) with u, w later neighbours of v
    # that are not adjacent, or None when peo is a perfect elimination ordering.
    pos = {v: i for i, v in enumerate(peo)}
    adj = g._adj
    for v in peo:
        later = [w for w in adj[v] if pos[w] > pos[v]]
        if len(later) < 2:
            continue
        u = min(later, key=pos.__getitem__)
        nu = adj[u]
        for w in sorted(later):
            if w != u and w not in nu:
                return v, u, w
    return None


def is_perfect_elimination_ordering(g: Graph, peo: list[int]) -> bool:
    return _peo_violation(g, peo) is None


def is_chordal(g: Graph) -> bool:
    return _peo_violation(g, mcs_order(g)[::-1]) is None


def _cycle_through(g: Graph, v: int, a: int, b: int) -> list[int] | None:
    # Chordless cycle v, a, ..., b when a shortest a-b path avoids N[v] - {a, b}.
    avoid = (g._adj[v] | {v}) - {a, b}
    path = shortest_path(g, a, b, avoid)
    return None if path is None else [v] + path


def chordless_cycle(g: Graph) -> list[int] | None:
    """A chordless cycle on at least four vertices, or None if ``g`` is chordal."""
    bad = _peo_violation(g, mcs_order(g)[::-1])
    if bad is None:
        return None
    cycle = _cycle_through(g, *bad)
    if cycle is not None:
        return cycle
    # Every chordless cycle passes through some v with non-adjacent neighbours a, b.
    for v in g.vertices:
        for a, b in combinations(sorted(g._adj[v]), 2):
            if not g.has_edge(a, b):
                cycle = _cycle_through(g, v, a, b)
                if cycle is not None:
                    return cycle
    raise AssertionError("MCS reported a violation but no chordless cycle exists")


def treewidth_chordal(g: Graph) -> int:
    """Largest clique size minus one; -1 for the empty graph."""
    peo = mcs_order(g)[::-1]
    if _peo_violation(g, peo) is not None:
        raise NotChordalError(chordless_cycle(g))
    pos = {v: i for i, v in enumerate(peo)}
    best = 0
    for v in peo:
        best = max(best, 1 + sum(1 for w in g._adj[v] if pos[w] > pos[v]))
    return best - 1


def clique_number_chordal(g: Graph) -> int:
    return treewidth_chordal(g) + 1


def _large_clique(g: Graph, size: int) -> tuple[int, ...] | None:
    # g must be chordal; every maximal clique is v plus its later PEO neighbours.
    peo = mcs_order(g)[::-1]
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = sorted(w for w in g._adj[v] if pos[w] > pos[v])
        if len(later) + 1 >= size:
            return tuple(sorted([v] + later[: size - 1]))
    return None


def _simplicial_small(adj: dict[int, set[int]], v: int, k: int) -> bool:
    nv = adj[v]
    if len(nv) > k:
        return False
    nl = list(nv)
    for i, a in enumerate(nl):
        na = adj[a]
        for b in nl[i + 1:]:
            if b not in na:
                return False
    return True


def recognize_ktree(g: Graph, k: int) -> BuildOrder | RecognitionFailure:
    """Build order witnessing that ``g`` is a k-tree, or a failure certificate.

    Peels the lowest-id vertex whose remaining neighbourhood is a clique of
    size <= k until nothing is left; the build order is the peel reversed.
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    adj = {v: set(n) for v, n in g._adj.items()}
    heap = [v for v in g.vertices if _simplicial_small(adj, v, k)]
    queued = set(heap)
    peeled = []
    while heap:
        v = heapq.heappop(heap)
        att = adj.pop(v)
        peeled.append((v, frozenset(att)))
        for w in att:
            adj[w].discard(v)
        for w in att:
            # Neighbourhoods only shrink, so a vertex never stops qualifying.
            if w not in queued and _simplicial_small(adj, w, k):
                queued.add(w)
                heapq.heappush(heap, w)
    if not adj:
        return BuildOrder(k, tuple(reversed(peeled)))
    rest = induced_subgraph(g, adj)
    cycle = chordless_cycle(rest)
    if cycle is not None:
        return RecognitionFailure("chordless_cycle", tuple(cycle), "graph is not chordal")
    clique = _large_clique(rest, k + 2)
    if clique is not None:
        return RecognitionFailure("large_clique", clique, f"clique of size {k + 2}")
    return RecognitionFailure("dead_end", tuple(sorted(adj)), "no removable vertex")
