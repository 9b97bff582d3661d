"""Finite simple graphs on dense integer vertices.

Vertices are ``0..n-1`` and their integer order is the canonical total order
used for every tie-break in the package.  Graphs are immutable; deleting or
restricting vertices produces a fresh graph plus an ``old -> new`` relabeling.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from localep.errors import MalformedInput

Path = tuple[int, ...]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]
    adj: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    # bit v of masks[u] is set iff uv is an edge
    masks: tuple[int, ...] = field(repr=False, compare=False)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (self.masks[u] >> v) & 1 == 1

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def has_isolated_vertices(self) -> bool:
        return any(not a for a in self.adj)

    def components(self, within: Iterable[int] | None = None) -> list[list[int]]:
        """Connected components (sorted lists) of the subgraph induced on ``within``."""
        alive = set(self.vertices if within is None else within)
        seen: set[int] = set()
        out = []
        for s in sorted(alive):
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if w in alive and w not in seen:
                        seen.add(w)
                        comp.append(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "Graph":
        if not isinstance(data, dict) or "n" not in data or "edges" not in data:
            raise MalformedInput('graph JSON must be an object with "n" and "edges"')
        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise MalformedInput("n must be an integer")
        pairs = []
        for e in data["edges"]:
            if not isinstance(e, (list, tuple)) or len(e) != 2:
                raise MalformedInput(f"bad edge entry {e!r}")
            u, v = e
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in (u, v)):
                raise MalformedInput(f"bad edge entry {e!r}")
            pairs.append((u, v))
        return build_graph(n, pairs)

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)


@dataclass(frozen=True)
class Separation:
    """A pair ``(M, N)`` covering the host's vertices with no edge from M\\N to N\\M."""

    M: frozenset[int]
    N: frozenset[int]

    @property
    def cut(self) -> frozenset[int]:
        return self.M & self.N

    def is_valid_in(self, g: Graph, within: Iterable[int] | None = None) -> bool:
        universe = set(g.vertices if within is None else within)
        if (self.M | self.N) != universe:
            return False
        left = self.M - self.N
        right = self.N - self.M
        return not any(w in right for u in left for w in g.adj[u])


def build_graph(vertex_count: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a simple graph; duplicate edges collapse, loops are rejected."""
    if vertex_count < 0:
        raise MalformedInput("vertex_count must be nonnegative")
    es: set[tuple[int, int]] = set()
    for e in edges:
        u, v = e
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise MalformedInput(f"edge ({u}, {v}) has an endpoint outside 0..{vertex_count - 1}")
        if u == v:
            raise MalformedInput(f"loop at vertex {u}")
        es.add((u, v) if u < v else (v, u))
    nbrs: list[list[int]] = [[] for _ in range(vertex_count)]
    for u, v in es:
        nbrs[u].append(v)
        nbrs[v].append(u)
    adj = tuple(tuple(sorted(a)) for a in nbrs)
    masks = tuple(sum(1 << w for w in a) for a in adj)
    return Graph(vertex_count, frozenset(es), adj, masks)


def induced_subgraph(g: Graph, keep: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    keep_sorted = sorted(set(keep))
    for v in keep_sorted:
        if not 0 <= v < g.n:
            raise MalformedInput(f"vertex {v} not in graph")
    relabel = {old: new for new, old in enumerate(keep_sorted)}
    edges = [(relabel[u], relabel[v]) for u, v in g.edges if u in relabel and v in relabel]
    return build_graph(len(keep_sorted), edges), relabel


def delete_vertices(g: Graph, X: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """``G \\ X`` with surviving vertices renumbered in their original order."""
    xs = set(X)
    bad = [v for v in xs if not 0 <= v < g.n]
    if bad:
        raise MalformedInput(f"vertices {sorted(bad)} not in graph")
    return induced_subgraph(g, (v for v in g.vertices if v not in xs))


def is_path_in(g: Graph, path: Sequence[int]) -> bool:
    if len(path) == 0:
        return False
    if any(not isinstance(v, int) or not 0 <= v < g.n for v in path):
        return False
    if len(set(path)) != len(path):
        return False
    return all(g.has_edge(path[i], path[i + 1]) for i in range(len(path) - 1))


def interior(path: Sequence[int]) -> tuple[int, ...]:
    """Path minus its two endpoints; empty for paths of at most two vertices."""
    return tuple(path[1:-1])
