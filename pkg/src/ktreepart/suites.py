"""Seeded experiment suites shared by the acceptance tests and ``scripts/``.

Each suite returns a :class:`SuiteResult` whose ``digest`` is a SHA-256 over
the compact JSON of every output it produced, in generation order, so two
runs can be compared byte for byte.
"""
from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field

from ktreepart.chordal import BuildOrder, RecognitionFailure, recognize_ktree
from ktreepart.documents import PartitionDocument
from ktreepart.graph import Graph, OrientedGraph, connected_components, underlying_graph
from ktreepart.harness import (
    GenSpec,
    SplitMix64,
    certify_tightness,
    oracle_exists_partition,
    random_ktree,
)
from ktreepart.oriented import (
    OrientedHPartition,
    orient_from_buildorder,
    recognize_oriented_ktree,
    theorem2_partition,
    validate_oriented_partition,
)
from ktreepart.partition import HPartition, quotient_graph, theorem1_partition, validate_theorem1

MAX_REPORTED_FAILURES = 20


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0
    counts: dict[str, int] = field(default_factory=dict)
    _hash: "hashlib._Hash" = field(default_factory=hashlib.sha256, repr=False)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def digest(self) -> str:
        return self._hash.hexdigest()

    def record(self, obj) -> None:
        self._hash.update(json.dumps(obj, separators=(",", ":")).encode())
        self._hash.update(b"\n")

    def fail(self, msg: str) -> None:
        if len(self.failures) < MAX_REPORTED_FAILURES:
            self.failures.append(msg)
        elif len(self.failures) == MAX_REPORTED_FAILURES:
            self.failures.append("... further failures suppressed")

    def degenerate(self, ok: bool) -> bool:
        # tallies the l=k / l=0 shape checks separately from other failures
        self.counts["degenerate_checks"] = self.counts.get("degenerate_checks", 0) + 1
        if not ok:
            self.counts["degenerate_failures"] = self.counts.get("degenerate_failures", 0) + 1
        return ok

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.cases} cases in {self.seconds:.1f}s"


def grid_specs(k: int, count: int = 500, n_max: int = 200) -> list[GenSpec]:
    """``count`` instances for parameter k: n spread evenly over 0..n_max,
    attachments alternating between full and partial."""
    specs = []
    for i in range(count):
        n = round(i * n_max / (count - 1)) if count > 1 else n_max
        specs.append(GenSpec(n, k, (k << 32) | i, allow_partial=i % 2 == 1))
    return specs


def _singletons_mirror(g, p, arcs: bool) -> bool:
    # Every bag a singleton and v -> node(v) maps g onto the host exactly.
    if any(len(b) != 1 for b in p.bags.values()):
        return False
    node = {v: x for x, b in p.bags.items() for v in b}
    if arcs:
        mapped = sorted((node[u], node[w]) for u, w in g.arcs())
        return mapped == p.host.arcs()
    mapped = sorted(tuple(sorted((node[u], node[w]))) for u, w in g.edges())
    return mapped == p.host.edges()


def _bags_are_components(g: Graph, p) -> bool:
    comps = {frozenset(c) for c in connected_components(g)}
    host_edges = p.host.num_arcs() if isinstance(p.host, OrientedGraph) else p.host.num_edges()
    return host_edges == 0 and set(p.bags.values()) == comps


def _partition_json(p, k: int, l: int, t: int) -> dict:
    return PartitionDocument.from_partition(p, k, l, t).to_json()


def theorem1_suite(ks=range(9), count: int = 500, n_max: int = 200) -> SuiteResult:
    """Undirected construction on the seeded grid, validated from scratch.

    Also checks recognition of every generated graph, that the host equals
    the contraction, and the l = k and l = 0 degenerate shapes.
    """
    res = SuiteResult("theorem1")
    start = time.perf_counter()
    for k in ks:
        for spec in grid_specs(k, count, n_max):
            g, order = random_ktree(spec)
            tag = f"k={k} seed={spec.seed} n={spec.n}"
            if not isinstance(recognize_ktree(g, k), BuildOrder):
                res.fail(f"{tag}: generated graph not recognised as a {k}-tree")
            for l in range(k + 1):
                res.cases += 1
                t = k // (l + 1)
                p = theorem1_partition(g, order, l)
                rep = validate_theorem1(g, p, k, l)
                if not rep.ok:
                    res.fail(f"{tag} l={l}: {rep.violations[0]}")
                if quotient_graph(g, p.bags) != p.host:
                    res.fail(f"{tag} l={l}: host differs from the contraction")
                if l == k and not res.degenerate(_singletons_mirror(g, p, arcs=False)):
                    res.fail(f"{tag} l={l}: l=k did not give singleton bags mirroring G")
                if l == 0 and not res.degenerate(_bags_are_components(g, p)):
                    res.fail(f"{tag} l={l}: l=0 bags are not the connected components")
                res.record(_partition_json(p, k, l, t))
    res.seconds = time.perf_counter() - start
    return res


def theorem2_suite(ks=range(9), count: int = 500, n_max: int = 200) -> SuiteResult:
    """Oriented construction (per-step invariant assertions on) on the same grid."""
    res = SuiteResult("theorem2")
    start = time.perf_counter()
    for k in ks:
        for spec in grid_specs(k, count, n_max):
            g, order = random_ktree(spec)
            d = orient_from_buildorder(order)
            tag = f"k={k} seed={spec.seed} n={spec.n}"
            oorder = recognize_oriented_ktree(d, k)
            if isinstance(oorder, RecognitionFailure):
                res.fail(f"{tag}: oriented graph not recognised ({oorder.kind})")
                continue
            for l in range(k + 1):
                res.cases += 1
                try:
                    p = theorem2_partition(d, oorder, l, check_invariants=True)
                except AssertionError as exc:
                    res.fail(f"{tag} l={l}: construction invariant broke: {exc}")
                    continue
                rep = validate_oriented_partition(d, p, k, l)
                if not rep.ok:
                    res.fail(f"{tag} l={l}: {rep.violations[0]}")
                if l == k and not res.degenerate(_singletons_mirror(d, p, arcs=True)):
                    res.fail(f"{tag} l={l}: l=k did not give singleton bags mirroring G")
                if l == 0 and not res.degenerate(_bags_are_components(g, p)):
                    res.fail(f"{tag} l={l}: l=0 bags are not the weak components")
                res.record(_partition_json(p, k, l, k - l))
    res.seconds = time.perf_counter() - start
    return res


def oracle_specs(k_max: int = 4, n_max: int = 9, seeds: int = 10) -> list[GenSpec]:
    return [
        GenSpec(n, k, (1 << 40) | (k << 24) | (n << 16) | s, allow_partial=bool(s % 2))
        for k in range(k_max + 1)
        for n in range(n_max + 1)
        for s in range(seeds)
    ]


def oracle_suite(k_max: int = 4, n_max: int = 9, seeds: int = 10) -> SuiteResult:
    """Brute-force existence of the guaranteed partition, without the construction."""
    res = SuiteResult("oracle")
    start = time.perf_counter()
    for spec in oracle_specs(k_max, n_max, seeds):
        g, _ = random_ktree(spec)
        k = spec.k
        for l in range(k + 1):
            res.cases += 1
            t = k // (l + 1)
            p = oracle_exists_partition(g, l, t)
            if p is None:
                res.fail(f"k={k} seed={spec.seed} n={spec.n} l={l}: no partition with t={t}")
                res.record(None)
            else:
                res.record(_partition_json(p, k, l, t))
    res.seconds = time.perf_counter() - start
    return res


def tightness_suite(k_max: int = 4) -> SuiteResult:
    res = SuiteResult("tightness")
    start = time.perf_counter()
    for k in range(k_max + 1):
        for l in range(k + 1):
            res.cases += 1
            tight = certify_tightness(k, l)
            if not tight:
                res.fail(f"K_{k + 1} with l={l} is not tight at t={k // (l + 1)}")
            res.record([k, l, tight])
    res.seconds = time.perf_counter() - start
    return res


# Mutations -----------------------------------------------------------------

def move_vertex(p, rng: SplitMix64):
    """Move one vertex into a bag whose node is not adjacent to its own bag
    (or anywhere, if it was alone).  Either way the result is invalid: an
    emptied bag, or an edge to a former bag-mate with no host edge to cover it.
    Returns ``(mutated, (v, from, to))`` or None when no such move exists."""
    host = underlying_graph(p.host) if isinstance(p.host, OrientedGraph) else p.host
    nodes = sorted(p.bags)
    verts = sorted(v for b in p.bags.values() for v in b)
    if len(nodes) < 2 or not verts:
        return None
    node_of = {v: x for x, b in p.bags.items() for v in b}
    offset = rng.below(len(verts))
    for i in range(len(verts)):
        v = verts[(offset + i) % len(verts)]
        x = node_of[v]
        if len(p.bags[x]) == 1:
            targets = [y for y in nodes if y != x]
        else:
            targets = [y for y in nodes if y != x and not host.has_edge(x, y)]
        if not targets:
            continue
        y = targets[rng.below(len(targets))]
        bags = dict(p.bags)
        bags[x] = bags[x] - {v}
        bags[y] = bags[y] | {v}
        return type(p)(p.host, bags), (v, x, y)
    return None


def delete_host_edge(p, rng: SplitMix64):
    if isinstance(p.host, OrientedGraph):
        arcs = p.host.arcs()
        if not arcs:
            return None
        a = arcs[rng.below(len(arcs))]
        host = OrientedGraph(p.host.vertices, [e for e in arcs if e != a])
        return OrientedHPartition(host, p.bags), a
    edges = p.host.edges()
    if not edges:
        return None
    e = edges[rng.below(len(edges))]
    host = Graph(p.host.vertices, [f for f in edges if f != e])
    return HPartition(host, p.bags), e


def flip_host_arc(p: OrientedHPartition, rng: SplitMix64):
    arcs = p.host.arcs()
    if not arcs:
        return None
    a = arcs[rng.below(len(arcs))]
    host = OrientedGraph(p.host.vertices, [e for e in arcs if e != a] + [(a[1], a[0])])
    return OrientedHPartition(host, p.bags), a


def mutation_suite(count: int = 100, seed: int = 2024) -> SuiteResult:
    """``count`` valid undirected and ``count`` valid oriented partitions, each
    hit by every applicable mutation class; every mutant must be rejected
    with a non-empty witness."""
    res = SuiteResult("mutation")
    start = time.perf_counter()
    rng = SplitMix64(seed)
    done = {"undirected": 0, "oriented": 0}
    detected = res.counts
    attempt = 0
    while min(done.values()) < count:
        attempt += 1
        k = 1 + rng.below(6)
        l = 1 + rng.below(k)
        spec = GenSpec(10 + rng.below(51), k, seed * 1000 + attempt, allow_partial=bool(rng.below(2)))
        g, order = random_ktree(spec)
        cases = []
        if done["undirected"] < count:
            p = theorem1_partition(g, order, l)
            muts = [move_vertex(p, rng), delete_host_edge(p, rng)]
            if all(m is not None for m in muts):
                cases.append(("undirected", g, p, zip(("move", "delete"), muts)))
        if done["oriented"] < count:
            d = orient_from_buildorder(order)
            q = theorem2_partition(d, recognize_oriented_ktree(d, k), l)
            muts = [move_vertex(q, rng), delete_host_edge(q, rng), flip_host_arc(q, rng)]
            if all(m is not None for m in muts):
                cases.append(("oriented", d, q, zip(("move", "delete", "flip"), muts)))
        for kind, graph, part, muts in cases:
            validate = validate_oriented_partition if kind == "oriented" else validate_theorem1
            if not validate(graph, part, k, l).ok:
                res.fail(f"{kind} seed={spec.seed}: unmutated partition already invalid")
                continue
            done[kind] += 1
            for name, (mutant, what) in muts:
                res.cases += 1
                rep = validate(graph, mutant, k, l)
                key = f"{kind}/{name}"
                hit = not rep.ok and all(v.witness for v in rep.violations)
                detected[key] = detected.get(key, 0) + hit
                if not hit:
                    res.fail(f"{key} seed={spec.seed} {what}: mutation not detected with a witness")
                res.record([key, list(what), sorted(rep.failed_tags())])
    res.seconds = time.perf_counter() - start
    return res
