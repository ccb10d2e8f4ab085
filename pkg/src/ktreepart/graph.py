"""Immutable simple graphs and digraphs over non-negative integer ids.

Iteration over vertices and neighbourhoods is always in ascending id order,
so every algorithm built on top of these types is deterministic.
"""
from __future__ import annotations

from collections import deque
from typing import Iterable, Mapping


class GraphError(ValueError):
    """Malformed graph input (unknown vertex, loop, duplicate edge, ...)."""


def _check_id(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise GraphError(f"vertex ids must be non-negative integers, got {v!r}")
    return v


class Graph:
    """Simple undirected graph stored as adjacency sets."""

    __slots__ = ("vertices", "_adj")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = ()):
        verts = [_check_id(v) for v in vertices]
        adj: dict[int, set[int]] = {}
        for v in verts:
            if v in adj:
                raise GraphError(f"duplicate vertex {v}")
            adj[v] = set()
        for e in edges:
            u, w = e
            for x in (u, w):
                if x not in adj:
                    raise GraphError(f"edge {(u, w)} references unknown vertex {x!r}")
            if u == w:
                raise GraphError(f"loop at vertex {u}")
            if w in adj[u]:
                raise GraphError(f"parallel edge {(u, w)}")
            adj[u].add(w)
            adj[w].add(u)
        self.vertices = tuple(sorted(adj))
        self._adj = {v: frozenset(adj[v]) for v in self.vertices}

    @classmethod
    def _from_adj(cls, adj: Mapping[int, Iterable[int]]) -> Graph:
        # Trusted constructor: caller guarantees symmetry and irreflexivity.
        g = object.__new__(cls)
        g.vertices = tuple(sorted(adj))
        g._adj = {v: frozenset(adj[v]) for v in g.vertices}
        return g

    @classmethod
    def complete(cls, vertices: Iterable[int]) -> Graph:
        vs = sorted(vertices)
        return cls._from_adj({v: set(vs) - {v} for v in vs})

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash(tuple(self.edges())) ^ hash(self.vertices)

    def __repr__(self) -> str:
        return f"Graph(vertices={list(self.vertices)}, edges={self.edges()})"

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def max_degree(self) -> int:
        return max((len(n) for n in self._adj.values()), default=0)

    def has_edge(self, u: int, w: int) -> bool:
        return w in self._adj.get(u, ())

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, w)`` with ``u < w``, sorted."""
        return [(u, w) for u in self.vertices for w in sorted(self._adj[u]) if u < w]

    def num_edges(self) -> int:
        return sum(len(n) for n in self._adj.values()) // 2

    def adjacency(self) -> dict[int, frozenset[int]]:
        return dict(self._adj)


class OrientedGraph:
    """Simple digraph with no loops and at most one arc per vertex pair."""

    __slots__ = ("vertices", "_out", "_in")

    def __init__(self, vertices: Iterable[int] = (), arcs: Iterable[tuple[int, int]] = ()):
        verts = [_check_id(v) for v in vertices]
        out: dict[int, set[int]] = {}
        inn: dict[int, set[int]] = {}
        for v in verts:
            if v in out:
                raise GraphError(f"duplicate vertex {v}")
            out[v] = set()
            inn[v] = set()
        for a in arcs:
            u, w = a
            for x in (u, w):
                if x not in out:
                    raise GraphError(f"arc {(u, w)} references unknown vertex {x!r}")
            if u == w:
                raise GraphError(f"loop at vertex {u}")
            if w in out[u]:
                raise GraphError(f"parallel arc {(u, w)}")
            if u in out[w]:
                raise GraphError(f"arcs {(u, w)} and {(w, u)} form a digon")
            out[u].add(w)
            inn[w].add(u)
        self.vertices = tuple(sorted(out))
        self._out = {v: frozenset(out[v]) for v in self.vertices}
        self._in = {v: frozenset(inn[v]) for v in self.vertices}

    @classmethod
    def _from_out(cls, out: Mapping[int, Iterable[int]]) -> OrientedGraph:
        # Trusted constructor: caller guarantees no loops and no digons.
        d = object.__new__(cls)
        d.vertices = tuple(sorted(out))
        d._out = {v: frozenset(out[v]) for v in d.vertices}
        inn: dict[int, set[int]] = {v: set() for v in d.vertices}
        for v, ws in d._out.items():
            for w in ws:
                inn[w].add(v)
        d._in = {v: frozenset(inn[v]) for v in d.vertices}
        return d

    def __contains__(self, v) -> bool:
        return v in self._out

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrientedGraph):
            return NotImplemented
        return self._out == other._out

    def __hash__(self) -> int:
        return hash(tuple(self.arcs())) ^ hash(self.vertices)

    def __repr__(self) -> str:
        return f"OrientedGraph(vertices={list(self.vertices)}, arcs={self.arcs()})"

    def out_neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._out[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def in_neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._in[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def has_arc(self, u: int, w: int) -> bool:
        return w in self._out.get(u, ())

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, w) for u in self.vertices for w in sorted(self._out[u])]

    def num_arcs(self) -> int:
        return sum(len(n) for n in self._out.values())


def _check_subset(g, s) -> None:
    for v in s:
        if v not in g:
            raise GraphError(f"unknown vertex {v!r}")


def is_clique(g: Graph, s: Iterable[int]) -> bool:
    s = list(set(s))
    _check_subset(g, s)
    adj = g._adj
    for i, u in enumerate(s):
        nu = adj[u]
        for w in s[i + 1:]:
            if w not in nu:
                return False
    return True


def non_adjacent_pair(g: Graph, s: Iterable[int]) -> tuple[int, int] | None:
    """Lowest non-adjacent pair in ``s``, or None if ``s`` is a clique."""
    s = sorted(set(s))
    _check_subset(g, s)
    for i, u in enumerate(s):
        nu = g._adj[u]
        for w in s[i + 1:]:
            if w not in nu:
                return (u, w)
    return None


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    s = set(s)
    _check_subset(g, s)
    adj = g._adj
    return Graph._from_adj({v: adj[v] & s for v in s})


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted vertex lists, ordered by their smallest vertex."""
    seen: set[int] = set()
    comps = []
    for root in g.vertices:
        if root in seen:
            continue
        seen.add(root)
        comp = [root]
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g._adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    # The empty graph counts as connected.
    if not g.vertices:
        return True
    root = g.vertices[0]
    seen = {root}
    stack = [root]
    adj = g._adj
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def shortest_path(g: Graph, src: int, dst: int, avoid: Iterable[int] = ()) -> list[int] | None:
    """BFS path from ``src`` to ``dst`` not touching ``avoid``; None if unreachable."""
    blocked = set(avoid)
    parent = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            path = []
            while v is not None:
                path.append(v)
                v = parent[v]
            return path[::-1]
        for w in sorted(g._adj[v]):
            if w not in parent and w not in blocked:
                parent[w] = v
                queue.append(w)
    return None


def underlying_graph(d: OrientedGraph) -> Graph:
    return Graph._from_adj({v: d._out[v] | d._in[v] for v in d.vertices})


def find_directed_cycle(d: OrientedGraph) -> list[int] | None:
    """A directed cycle ``[v0, v1, ..., vm]`` (arcs vi->vi+1 and vm->v0), or None."""
    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict.fromkeys(d.vertices, WHITE)
    for root in d.vertices:
        if colour[root] != WHITE:
            continue
        colour[root] = GREY
        path = [root]
        iters = [iter(sorted(d._out[root]))]
        while iters:
            for w in iters[-1]:
                if colour[w] == GREY:
                    return path[path.index(w):]
                if colour[w] == WHITE:
                    colour[w] = GREY
                    path.append(w)
                    iters.append(iter(sorted(d._out[w])))
                    break
            else:
                colour[path.pop()] = BLACK
                iters.pop()
    return None


def is_acyclic(d: OrientedGraph) -> bool:
    return find_directed_cycle(d) is None


def induced_subdigraph(d: OrientedGraph, s: Iterable[int]) -> OrientedGraph:
    s = set(s)
    _check_subset(d, s)
    return OrientedGraph._from_out({v: d._out[v] & s for v in s})


def is_weakly_connected(d: OrientedGraph) -> bool:
    return is_connected(underlying_graph(d))
