"""JSON graph/partition documents and DOT export.

Documents are strict: unknown keys are rejected so that typos in fixtures
fail loudly.  Serialisation sorts everything ascending and is byte-stable.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Union

from ktreepart.chordal import BuildOrder
from ktreepart.graph import Graph, GraphError, OrientedGraph
from ktreepart.oriented import OrientedHPartition
from ktreepart.partition import HPartition

AnyGraph = Union[Graph, OrientedGraph]
AnyPartition = Union[HPartition, OrientedHPartition]

GRAPH_KEYS = ("directed", "vertices", "edges")
SIDECAR_KEY = "build_order"
PARTITION_KEYS = ("host", "bags", "parameters")
PARAMETER_KEYS = ("k", "l", "t")


class DocumentError(ValueError):
    """A document that does not parse or violates its schema."""


def _int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise DocumentError(f"{what} must be an integer, got {x!r}")
    return x


def _keys(obj, required, optional=(), what="document") -> None:
    if not isinstance(obj, dict):
        raise DocumentError(f"{what} must be a JSON object")
    unknown = set(obj) - set(required) - set(optional)
    if unknown:
        raise DocumentError(f"{what} has unknown fields {sorted(unknown)}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise DocumentError(f"{what} lacks fields {missing}")


@dataclass(frozen=True)
class GraphDocument:
    directed: bool
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    build_order: BuildOrder | None = None

    def __post_init__(self):
        edges = self.edges if self.directed else (tuple(sorted(e)) for e in self.edges)
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        object.__setattr__(self, "edges", tuple(sorted(tuple(e) for e in edges)))

    @classmethod
    def from_graph(cls, g: AnyGraph, build_order: BuildOrder | None = None) -> GraphDocument:
        if isinstance(g, OrientedGraph):
            return cls(True, tuple(g.vertices), tuple(g.arcs()), build_order)
        return cls(False, tuple(g.vertices), tuple(g.edges()), build_order)

    def to_graph(self) -> AnyGraph:
        try:
            if self.directed:
                return OrientedGraph(self.vertices, self.edges)
            return Graph(self.vertices, self.edges)
        except GraphError as exc:
            raise DocumentError(str(exc)) from exc

    def to_json(self) -> dict[str, Any]:
        obj: dict[str, Any] = {
            "directed": self.directed,
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
        }
        if self.build_order is not None:
            obj[SIDECAR_KEY] = build_order_to_json(self.build_order)
        return obj

    @classmethod
    def from_json(cls, obj, what: str = "graph document") -> GraphDocument:
        _keys(obj, GRAPH_KEYS, (SIDECAR_KEY,), what)
        if not isinstance(obj["directed"], bool):
            raise DocumentError(f"{what}: 'directed' must be a boolean")
        if not isinstance(obj["vertices"], list) or not isinstance(obj["edges"], list):
            raise DocumentError(f"{what}: 'vertices' and 'edges' must be lists")
        vertices = tuple(_int(v, "vertex id") for v in obj["vertices"])
        edges = []
        for e in obj["edges"]:
            if not isinstance(e, list) or len(e) != 2:
                raise DocumentError(f"{what}: edge {e!r} is not a pair")
            edges.append((_int(e[0], "edge endpoint"), _int(e[1], "edge endpoint")))
        order = build_order_from_json(obj[SIDECAR_KEY]) if SIDECAR_KEY in obj else None
        doc = cls(obj["directed"], vertices, tuple(edges), order)
        doc.to_graph()
        return doc


def build_order_to_json(order) -> dict[str, Any]:
    return {"k": order.k, "steps": [[v, sorted(att)] for v, att in order.steps]}


def build_order_from_json(obj) -> BuildOrder:
    _keys(obj, ("k", "steps"), what="build order")
    k = _int(obj["k"], "k")
    steps = []
    if not isinstance(obj["steps"], list):
        raise DocumentError("build order: 'steps' must be a list")
    for step in obj["steps"]:
        if not isinstance(step, list) or len(step) != 2 or not isinstance(step[1], list):
            raise DocumentError(f"build order: malformed step {step!r}")
        steps.append((_int(step[0], "vertex id"), [_int(u, "vertex id") for u in step[1]]))
    return BuildOrder.from_steps(k, steps)


@dataclass(frozen=True)
class PartitionDocument:
    host: GraphDocument
    bags: tuple[tuple[int, tuple[int, ...]], ...]
    k: int
    l: int
    t: int

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(sorted((x, tuple(sorted(vs))) for x, vs in self.bags)))

    @property
    def directed(self) -> bool:
        return self.host.directed

    @classmethod
    def from_partition(cls, p: AnyPartition, k: int, l: int, t: int) -> PartitionDocument:
        bags = tuple((x, tuple(vs)) for x, vs in p.sorted_bags())
        return cls(GraphDocument.from_graph(p.host), bags, k, l, t)

    def to_partition(self) -> AnyPartition:
        host = self.host.to_graph()
        bags = {x: frozenset(vs) for x, vs in self.bags}
        if self.directed:
            return OrientedHPartition(host, bags)
        return HPartition(host, bags)

    def to_json(self) -> dict[str, Any]:
        return {
            "host": self.host.to_json(),
            "bags": [[x, list(vs)] for x, vs in self.bags],
            "parameters": {"k": self.k, "l": self.l, "t": self.t},
        }

    @classmethod
    def from_json(cls, obj) -> PartitionDocument:
        _keys(obj, PARTITION_KEYS, what="partition document")
        host = GraphDocument.from_json(obj["host"], "partition host")
        if host.build_order is not None:
            raise DocumentError("partition host must not carry a build order")
        params = obj["parameters"]
        _keys(params, PARAMETER_KEYS, what="partition parameters")
        if not isinstance(obj["bags"], list):
            raise DocumentError("partition document: 'bags' must be a list")
        bags = []
        seen = set()
        for entry in obj["bags"]:
            if not isinstance(entry, list) or len(entry) != 2 or not isinstance(entry[1], list):
                raise DocumentError(f"partition document: malformed bag {entry!r}")
            x = _int(entry[0], "node id")
            if x in seen:
                raise DocumentError(f"partition document: node {x} has two bags")
            seen.add(x)
            members = tuple(_int(v, "vertex id") for v in entry[1])
            if len(set(members)) != len(members):
                raise DocumentError(f"partition document: bag {x} lists a vertex twice")
            bags.append((x, members))
        return cls(host, tuple(bags), *(_int(params[key], key) for key in PARAMETER_KEYS))


def _format(value, indent: int = 0) -> str:
    # Objects one key per line; dict-free lists stay on one line when short,
    # otherwise one element per line.
    pad = "  " * (indent + 1)
    flat = json.dumps(value, separators=(", ", ": "))
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_format(v, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(value, list) and any(isinstance(v, (list, dict)) for v in value):
        if "{" not in flat and len(flat) <= 72 and not all(isinstance(v, list) for v in value):
            return flat
        items = [pad + _format(v, indent + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return flat


def dumps(doc) -> str:
    return _format(doc.to_json()) + "\n"


def loads(text: str) -> GraphDocument | PartitionDocument:
    """Parse either document kind; partitions are recognised by their 'host' key."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    if isinstance(obj, dict) and "host" in obj:
        return PartitionDocument.from_json(obj)
    return GraphDocument.from_json(obj)


def to_dot(doc: GraphDocument | PartitionDocument) -> str:
    if isinstance(doc, PartitionDocument):
        return _partition_dot(doc)
    kind, arrow = ("digraph", "->") if doc.directed else ("graph", "--")
    lines = [f"{kind} G {{"]
    lines += [f"  {v};" for v in sorted(doc.vertices)]
    lines += [f"  {u} {arrow} {w};" for u, w in sorted(doc.edges)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def _partition_dot(doc: PartitionDocument) -> str:
    kind, arrow = ("digraph", "->") if doc.directed else ("graph", "--")
    lines = [f"{kind} P {{", "  compound=true;"]
    anchor = {}
    for x, vs in sorted(doc.bags):
        lines.append(f"  subgraph cluster_{x} {{")
        lines.append(f'    label="{x}";')
        members = sorted(vs)
        if members:
            anchor[x] = str(members[0])
            lines += [f"    {v};" for v in members]
        else:
            anchor[x] = f"empty_{x}"
            lines.append(f"    empty_{x} [shape=point];")
        lines.append("  }")
    for x, y in sorted(doc.host.edges):
        ax = anchor.get(x, f"node_{x}")
        ay = anchor.get(y, f"node_{y}")
        lines.append(f"  {ax} {arrow} {ay} [ltail=cluster_{x}, lhead=cluster_{y}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
