"""Finite connected trivalent multigraphs (loops and parallel edges allowed).

A graph is a list of vertex ids and a list of edges, each edge carrying an id
and an unordered pair of end vertices.  An edge whose two ends coincide is a
loop and contributes two branches to its vertex.
"""

from __future__ import annotations

import itertools
import json
from collections import Counter
from dataclasses import dataclass
from typing import Any

import networkx as nx


class GraphError(ValueError):
    """Base class for malformed graphs."""


class NotConnected(GraphError):
    pass


class NotTrivalent(GraphError):
    def __init__(self, vertex: str, degree: int):
        super().__init__(f"vertex {vertex!r} has {degree} branches, expected 3")
        self.vertex = vertex
        self.degree = degree


class DuplicateId(GraphError):
    def __init__(self, ident: str):
        super().__init__(f"duplicate id {ident!r}")
        self.ident = ident


class UnknownVertex(GraphError, KeyError):
    pass


class UnknownCatalogName(GraphError, KeyError):
    pass


class GenusTooLarge(GraphError):
    pass


class SchemaError(GraphError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass(frozen=True)
class Edge:
    id: str
    ends: tuple[str, str]

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class TrivalentGraph:
    name: str
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    @classmethod
    def from_pairs(cls, name: str, vertices, edges) -> "TrivalentGraph":
        """Build from ``vertices`` and ``(edge_id, u, v)`` tuples, then validate."""
        g = cls(name, tuple(vertices), tuple(Edge(e, (u, v)) for e, u, v in edges))
        validate(g)
        return g

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def edge(self, edge_id: str) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise KeyError(edge_id)

    def relabel(self, vertex_map: dict[str, str], edge_map: dict[str, str], name: str | None = None) -> "TrivalentGraph":
        return TrivalentGraph(
            name or self.name,
            tuple(vertex_map[v] for v in self.vertices),
            tuple(Edge(edge_map[e.id], (vertex_map[e.ends[0]], vertex_map[e.ends[1]])) for e in self.edges),
        )


def _branch_degrees(graph: TrivalentGraph) -> Counter:
    deg: Counter = Counter({v: 0 for v in graph.vertices})
    for e in graph.edges:
        for end in e.ends:
            if end not in deg:
                raise UnknownVertex(end)
            deg[end] += 1
    return deg


def validate(graph: TrivalentGraph) -> None:
    """Raise a :class:`GraphError` unless ``graph`` is connected and 3-regular."""
    seen: set[str] = set()
    for ident in graph.vertices:
        if ident in seen:
            raise DuplicateId(ident)
        seen.add(ident)
    seen = set()
    for e in graph.edges:
        if e.id in seen:
            raise DuplicateId(e.id)
        seen.add(e.id)

    for v, d in _branch_degrees(graph).items():
        if d != 3:
            raise NotTrivalent(v, d)

    if not graph.vertices:
        raise NotConnected("empty graph")
    adj: dict[str, set[str]] = {v: set() for v in graph.vertices}
    for e in graph.edges:
        a, b = e.ends
        adj[a].add(b)
        adj[b].add(a)
    stack = [graph.vertices[0]]
    reached = {graph.vertices[0]}
    while stack:
        for w in adj[stack.pop()]:
            if w not in reached:
                reached.add(w)
                stack.append(w)
    if len(reached) != len(graph.vertices):
        raise NotConnected(f"{len(graph.vertices) - len(reached)} vertices unreachable from {graph.vertices[0]!r}")


def genus(graph: TrivalentGraph) -> int:
    validate(graph)
    return len(graph.edges) - len(graph.vertices) + 1


def vertex_triple(graph: TrivalentGraph, v: str) -> tuple[str, str, str]:
    """Edge ids at the three branches of ``v``; a loop appears twice."""
    if v not in graph.vertices:
        raise UnknownVertex(v)
    out = []
    for e in graph.edges:
        out.extend(e.id for end in e.ends if end == v)
    return tuple(out)  # type: ignore[return-value]


# -- catalog -----------------------------------------------------------------

def _theta() -> TrivalentGraph:
    return TrivalentGraph.from_pairs("theta", ["u", "v"], [("e1", "u", "v"), ("e2", "u", "v"), ("e3", "u", "v")])


def _dumbbell() -> TrivalentGraph:
    return TrivalentGraph.from_pairs("dumbbell", ["u", "v"], [("l1", "u", "u"), ("b", "u", "v"), ("l2", "v", "v")])


def _k4() -> TrivalentGraph:
    vs = ["A", "B", "C", "D"]
    return TrivalentGraph.from_pairs("k4", vs, [(a + b, a, b) for a, b in itertools.combinations(vs, 2)])


def chain(g: int) -> TrivalentGraph:
    """Caterpillar of genus ``g``: loops at both ends, single and double edges alternating.

    Vertices v1..v(2g-2) sit on a line; v(2i-1)-v(2i) is a doubled edge for
    interior pairs and single edges join the pairs.  Sweeping left to right
    never keeps more than two edges open.
    """
    if g < 2:
        raise UnknownCatalogName(f"chain:{g}")
    n = 2 * g - 2
    vs = [f"v{i}" for i in range(1, n + 1)]
    edges = [("l1", vs[0], vs[0])]
    for i in range(n - 1):
        a, b = vs[i], vs[i + 1]
        if i % 2 == 0:
            edges.append((f"s{i + 1}", a, b))
        else:
            edges.append((f"d{i + 1}a", a, b))
            edges.append((f"d{i + 1}b", a, b))
    edges.append(("l2", vs[-1], vs[-1]))
    return TrivalentGraph.from_pairs(f"chain:{g}", vs, edges)


def catalog(name: str) -> TrivalentGraph:
    if name == "theta":
        return _theta()
    if name == "dumbbell":
        return _dumbbell()
    if name == "k4":
        return _k4()
    if name.startswith("chain:"):
        try:
            g = int(name.split(":", 1)[1])
        except ValueError:
            raise UnknownCatalogName(name) from None
        if g >= 2:
            return chain(g)
    raise UnknownCatalogName(name)


CATALOG_NAMES = ("theta", "dumbbell", "k4", "chain:g")


# -- exhaustive generation ---------------------------------------------------

def _multiplicity_matrices(n: int):
    """Symmetric nonnegative matrices with row degree 3 (diagonal counts twice)."""
    mat = [[0] * n for _ in range(n)]
    rem = [3] * n

    def cells():
        for i in range(n):
            for j in range(i, n):
                yield i, j

    order = list(cells())

    def rec(k: int):
        if k == len(order):
            if all(r == 0 for r in rem):
                yield [row[:] for row in mat]
            return
        i, j = order[k]
        if j == i:
            # the diagonal cell is the first cell of row i; the row must be closable afterwards
            for loops in range(rem[i] // 2, -1, -1):
                mat[i][i] = loops
                rem[i] -= 2 * loops
                yield from rec(k + 1)
                rem[i] += 2 * loops
            mat[i][i] = 0
            return
        hi = min(rem[i], rem[j])
        lo = rem[i] if j == n - 1 else 0
        for m in range(lo, hi + 1):
            mat[i][j] = mat[j][i] = m
            rem[i] -= m
            rem[j] -= m
            yield from rec(k + 1)
            rem[i] += m
            rem[j] += m
        mat[i][j] = mat[j][i] = 0

    if n == 1:
        return
    yield from rec(0)


def _as_nx(mat) -> nx.Graph:
    G = nx.Graph()
    n = len(mat)
    for i in range(n):
        G.add_node(i, loops=str(mat[i][i]))
    for i in range(n):
        for j in range(i + 1, n):
            if mat[i][j]:
                G.add_edge(i, j, mult=str(mat[i][j]))
    return G


def _graph_from_matrix(name: str, mat) -> TrivalentGraph:
    n = len(mat)
    vs = [f"v{i}" for i in range(n)]
    edges = []
    k = 0
    for i in range(n):
        for j in range(i, n):
            for _ in range(mat[i][j]):
                k += 1
                edges.append((f"e{k}", vs[i], vs[j]))
    return TrivalentGraph.from_pairs(name, vs, edges)


def generate_trivalent(g: int) -> list[TrivalentGraph]:
    """All connected trivalent multigraphs of genus ``g`` up to isomorphism."""
    if g < 2:
        raise ValueError("genus must be at least 2")
    if g > 5:
        raise GenusTooLarge(f"genus {g} > 5")
    n = 2 * g - 2
    reps: dict[str, list[nx.Graph]] = {}
    found = []
    for mat in _multiplicity_matrices(n):
        G = _as_nx(mat)
        if not nx.is_connected(G):
            continue
        key = nx.weisfeiler_lehman_graph_hash(G, node_attr="loops", edge_attr="mult")
        bucket = reps.setdefault(key, [])
        if any(
            nx.is_isomorphic(G, H, node_match=lambda a, b: a["loops"] == b["loops"],
                             edge_match=lambda a, b: a["mult"] == b["mult"])
            for H in bucket
        ):
            continue
        bucket.append(G)
        found.append(_graph_from_matrix(f"gen:{g}:{len(found)}", mat))
    return found


# -- JSON --------------------------------------------------------------------

def serialize_graph(graph: TrivalentGraph) -> str:
    doc = {
        "name": graph.name,
        "vertices": list(graph.vertices),
        "edges": [{"id": e.id, "ends": list(e.ends)} for e in graph.edges],
    }
    return json.dumps(doc)


def _expect(cond: bool, path: str, message: str) -> None:
    if not cond:
        raise SchemaError(path, message)


def parse_graph(text: str | bytes) -> TrivalentGraph:
    try:
        doc: Any = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from None
    _expect(isinstance(doc, dict), "$", "expected an object")
    for key in ("name", "vertices", "edges"):
        _expect(key in doc, f"$.{key}", "missing")
    _expect(isinstance(doc["name"], str), "$.name", "expected a string")
    _expect(isinstance(doc["vertices"], list), "$.vertices", "expected an array")
    for i, v in enumerate(doc["vertices"]):
        _expect(isinstance(v, str), f"$.vertices[{i}]", "expected a string")
    _expect(isinstance(doc["edges"], list), "$.edges", "expected an array")
    edges = []
    for i, e in enumerate(doc["edges"]):
        path = f"$.edges[{i}]"
        _expect(isinstance(e, dict), path, "expected an object")
        _expect(isinstance(e.get("id"), str), f"{path}.id", "expected a string")
        ends = e.get("ends")
        _expect(isinstance(ends, list) and len(ends) == 2, f"{path}.ends", "expected an array of 2 vertex ids")
        _expect(all(isinstance(x, str) for x in ends), f"{path}.ends", "vertex ids must be strings")
        edges.append(Edge(e["id"], (ends[0], ends[1])))
    graph = TrivalentGraph(doc["name"], tuple(doc["vertices"]), tuple(edges))
    validate(graph)
    return graph


def load_graph(spec: str) -> TrivalentGraph:
    """Resolve a catalog name or a path to a graph JSON file."""
    if spec.endswith(".json"):
        with open(spec, encoding="utf-8") as fh:
            return parse_graph(fh.read())
    return catalog(spec)
