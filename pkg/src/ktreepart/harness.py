"""Instance generation and brute-force oracles.

Randomness comes only from :class:`SplitMix64`, a 64-bit generator with
published constants (Steele, Lea and Flood 2014), so any port that follows
the same draw sequence reproduces instances exactly.  The draw sequence of
:func:`random_ktree` is documented in its docstring.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from ktreepart.chordal import BuildOrder
from ktreepart.graph import Graph
from ktreepart.partition import HPartition, bag_is_connected_ttree, is_ltree, quotient_graph

MASK64 = (1 << 64) - 1
DEFAULT_ORACLE_CAP = 10
DEFAULT_TIGHTNESS_CAP = 5


class SplitMix64:
    def __init__(self, seed: int):
        if not 0 <= seed <= MASK64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {seed}")
        self.state = seed

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection of the biased tail."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            r = self.next()
            if r < limit:
                return r % n

    def sample(self, items: list[int], s: int) -> list[int]:
        """First ``s`` entries of a partial Fisher-Yates shuffle of ``items``."""
        pool = list(items)
        for j in range(s):
            r = j + self.below(len(pool) - j)
            pool[j], pool[r] = pool[r], pool[j]
        return pool[:s]


@dataclass(frozen=True)
class GenSpec:
    n: int
    k: int
    seed: int = 0
    allow_partial: bool = False

    def __post_init__(self):
        if self.n < 0 or self.k < 0:
            raise ValueError(f"need n >= 0 and k >= 0, got n={self.n}, k={self.k}")
        if not 0 <= self.seed <= MASK64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")


def random_ktree(spec: GenSpec) -> tuple[Graph, BuildOrder]:
    """Random k-tree together with the build order that produced it.

    Draw sequence: a Fisher-Yates shuffle of ``range(n)`` gives the vertex id
    of each step.  Each step's attachment is taken from the clique
    ``attachment + {vertex}`` of a uniformly chosen earlier step.  Without
    ``allow_partial`` the attachment has size ``min(k, i)`` at step ``i``: the
    first k+1 steps attach to everything so far, later ones pick a
    (k+1)-clique and drop one random member.  With ``allow_partial`` the size
    is drawn uniformly from ``0..min(k, w)`` where ``w`` is the largest
    clique present, then a random subset of that size of a random large
    enough clique is used.
    """
    n, k = spec.n, spec.k
    rng = SplitMix64(spec.seed)
    labels = rng.sample(list(range(n)), n)
    steps: list[tuple[int, frozenset[int]]] = []
    # at_least[s]: cliques (from earlier steps) with at least s vertices
    at_least: list[list[list[int]]] = [[] for _ in range(k + 2)]
    omega = 0
    for i, v in enumerate(labels):
        if spec.allow_partial:
            size = rng.below(min(k, omega) + 1)
            if size == 0:
                att: list[int] = []
            else:
                pool = at_least[size]
                att = rng.sample(pool[rng.below(len(pool))], size)
        elif i <= k:
            att = labels[:i]
        else:
            pool = at_least[k + 1]
            clique = pool[rng.below(len(pool))]
            drop = rng.below(k + 1)
            att = clique[:drop] + clique[drop + 1:]
        clique = sorted(att) + [v]
        for s in range(1, min(len(clique), k + 1) + 1):
            at_least[s].append(clique)
        omega = max(omega, len(clique))
        steps.append((v, frozenset(att)))
    order = BuildOrder(k, tuple(steps))
    return order.replay(), order


def restricted_growth_strings(n: int) -> Iterator[list[int]]:
    """All set partitions of ``range(n)`` as restricted growth strings, lexicographically."""
    a = [0] * n

    def rec(i: int, top: int):
        if i == n:
            yield list(a)
            return
        for b in range(top + 2):
            a[i] = b
            yield from rec(i + 1, max(top, b))

    if n == 0:
        yield []
    else:
        yield from rec(1, 0)


def _has_clique_of_size(adj, cands: list[int], size: int) -> bool:
    if size <= 0:
        return True
    for combo in combinations(cands, size):
        if all(b in adj(a) for a, b in combinations(combo, 2)):
            return True
    return False


def oracle_exists_partition(
    g: Graph, l: int, t: int, cap: int = DEFAULT_ORACLE_CAP, prune: bool = True
) -> HPartition | None:
    """First set partition (restricted growth order) that is an l-tree-partition
    with connected t-tree bags, or None if there is none.

    Vertices are taken in ascending id order; bag ``b`` becomes node ``b``.
    With ``prune`` a branch is cut as soon as some bag holds a (t+2)-clique or
    the contraction so far holds an (l+2)-clique: both only grow as more
    vertices are placed, so the first match is the same as without pruning.
    """
    if l < 0 or t < 0:
        raise ValueError("l and t must be non-negative")
    vs = list(g.vertices)
    n = len(vs)
    if n > cap:
        raise ValueError(f"oracle limited to {cap} vertices, graph has {n}")
    if n == 0:
        return HPartition(Graph(), {})
    adj = g._adj
    blocks: list[list[int]] = []
    # cross[b][c]: number of G-edges between placed vertices of bags b and c
    cross: list[dict[int, int]] = []
    block_of: dict[int, int] = {}

    def quotient_nbrs(b: int) -> set[int]:
        return {c for c, m in cross[b].items() if m}

    def place(v: int, b: int) -> list[int]:
        touched = []
        for w in adj[v]:
            c = block_of.get(w)
            if c is not None and c != b:
                cross[b][c] = cross[b].get(c, 0) + 1
                cross[c][b] = cross[c].get(b, 0) + 1
                touched.append(c)
        block_of[v] = b
        blocks[b].append(v)
        return touched

    def unplace(v: int, b: int, touched: list[int]) -> None:
        blocks[b].pop()
        del block_of[v]
        for c in touched:
            cross[b][c] -= 1
            cross[c][b] -= 1

    def dead(v: int, b: int) -> bool:
        inside = sorted(w for w in blocks[b] if w in adj[v] and w != v)
        if len(inside) >= t + 1 and _has_clique_of_size(adj.__getitem__, inside, t + 1):
            return True
        qn = sorted(quotient_nbrs(b))
        return len(qn) >= l + 1 and _has_clique_of_size(quotient_nbrs, qn, l + 1)

    def accept() -> HPartition | None:
        bags = {b: frozenset(block) for b, block in enumerate(blocks)}
        for bag in bags.values():
            if not bag_is_connected_ttree(g, bag, t):
                return None
        host = quotient_graph(g, bags)
        if not is_ltree(host, l):
            return None
        return HPartition(host, bags)

    def rec(i: int) -> HPartition | None:
        if i == n:
            return accept()
        v = vs[i]
        for b in range(len(blocks) + 1):
            fresh = b == len(blocks)
            if fresh:
                blocks.append([])
                cross.append({})
            touched = place(v, b)
            if not (prune and dead(v, b)):
                found = rec(i + 1)
                if found is not None:
                    return found
            unplace(v, b, touched)
            if fresh:
                blocks.pop()
                cross.pop()
        return None

    return rec(0)


def certify_tightness(k: int, l: int, cap: int = DEFAULT_TIGHTNESS_CAP) -> bool:
    """K_{k+1} admits the guaranteed partition with t = floor(k/(l+1)) but none with t - 1."""
    if not 0 <= l <= k:
        raise ValueError(f"need 0 <= l <= k, got k={k}, l={l}")
    if k > cap:
        raise ValueError(f"tightness certification limited to k <= {cap}, got k={k}")
    g = Graph.complete(range(k + 1))
    t = k // (l + 1)
    if oracle_exists_partition(g, l, t, cap=k + 1) is None:
        return False
    return t == 0 or oracle_exists_partition(g, l, t - 1, cap=k + 1) is None


def all_labeled_graphs(n: int) -> Iterator[Graph]:
    """Every labelled simple graph on vertices ``0..n-1`` (2**(n choose 2) of them)."""
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(range(n), [p for i, p in enumerate(pairs) if mask >> i & 1])


def chordless_cycle_bruteforce(g: Graph) -> tuple[int, ...] | None:
    """Vertex set of some induced cycle on >= 4 vertices, by subset enumeration."""
    vs = g.vertices
    for size in range(4, len(vs) + 1):
        for sub in combinations(vs, size):
            s = set(sub)
            if all(len(g._adj[v] & s) == 2 for v in sub):
                # 2-regular; it is a single cycle iff connected
                seen = {sub[0]}
                stack = [sub[0]]
                while stack:
                    for w in g._adj[stack.pop()] & s:
                        if w not in seen:
                            seen.add(w)
                            stack.append(w)
                if len(seen) == size:
                    return sub
    return None


def clique_number_bruteforce(g: Graph) -> int:
    best = 0
    vs = g.vertices
    for size in range(1, len(vs) + 1):
        if _has_clique_of_size(g._adj.__getitem__, list(vs), size):
            best = size
        else:
            break
    return best
