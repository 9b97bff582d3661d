"""Deterministic graph generators for examples, patterns and the test corpus."""

from __future__ import annotations

import itertools
import random

from localep.errors import MalformedInput
from localep.graph import Graph, build_graph


def cycle(n: int) -> Graph:
    if n < 3:
        raise MalformedInput("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    """Path on ``n`` vertices."""
    if n < 1:
        raise MalformedInput("a path needs at least 1 vertex")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def star(n: int) -> Graph:
    """``K_{1,n}``: centre 0 and ``n`` leaves."""
    if n < 1:
        raise MalformedInput("a star needs at least 1 leaf")
    return build_graph(n + 1, [(0, i) for i in range(1, n + 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise MalformedInput("a complete graph needs at least 1 vertex")
    return build_graph(n, itertools.combinations(range(n), 2))


def theta(a: int, b: int, c: int) -> Graph:
    """Two poles 0 and 1 joined by three internally disjoint paths of a, b, c edges.

    At most one of the paths may be a single edge.
    """
    lengths = (a, b, c)
    if min(lengths) < 1 or sum(1 for x in lengths if x == 1) > 1:
        raise MalformedInput("theta needs lengths >= 1 with at most one equal to 1")
    edges = []
    nxt = 2
    for L in lengths:
        prev = 0
        for _ in range(L - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return build_graph(nxt, edges)


def gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p); the same seed always gives the same graph."""
    if n < 0 or not 0.0 <= p <= 1.0:
        raise MalformedInput("need n >= 0 and 0 <= p <= 1")
    rng = random.Random(seed)
    return build_graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def disjoint_copies(g: Graph, count: int) -> Graph:
    if count < 1:
        raise MalformedInput("need at least one copy")
    edges = [(u + i * g.n, v + i * g.n) for i in range(count) for u, v in g.sorted_edges()]
    return build_graph(g.n * count, edges)


def counterexample_tree() -> Graph:
    """Root 0 with six children; every child and grandchild has two children.

    Vertices are numbered breadth first: root, then depth 1 (1..6), depth 2
    (7..18), leaves (19..42).
    """
    edges = []
    frontier = [0]
    nxt = 1
    for fanout in (6, 2, 2):
        new = []
        for u in frontier:
            for _ in range(fanout):
                edges.append((u, nxt))
                new.append(nxt)
                nxt += 1
        frontier = new
    return build_graph(nxt, edges)


def depths(g: Graph, root: int = 0) -> dict[int, int]:
    """Breadth-first distance from ``root``."""
    dist = {root: 0}
    frontier = [root]
    while frontier:
        new = []
        for u in frontier:
            for w in g.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    new.append(w)
        frontier = new
    return dist


_ARITY = {
    "fig1-tree": 0,
    "cycle": 1,
    "path": 1,
    "star": 1,
    "complete": 1,
    "theta": 3,
    "gnp": 3,
    "petersen": 0,
    "triangles": 1,
}


def generate(kind: str, params: list[str] | tuple = ()) -> Graph:
    """Build a graph from a generator name and string parameters, as on the command line."""
    if kind not in _ARITY:
        raise MalformedInput(f"unknown generator {kind!r}")
    if len(params) != _ARITY[kind]:
        raise MalformedInput(f"{kind} takes {_ARITY[kind]} parameter(s), got {len(params)}")
    try:
        if kind == "fig1-tree":
            return counterexample_tree()
        if kind == "petersen":
            return petersen()
        if kind == "gnp":
            return gnp(int(params[0]), float(params[1]), int(params[2]))
        ints = [int(x) for x in params]
    except ValueError as exc:
        raise MalformedInput(f"bad parameter for {kind}: {exc}") from None
    if kind == "cycle":
        return cycle(*ints)
    if kind == "path":
        return path(*ints)
    if kind == "star":
        return star(*ints)
    if kind == "complete":
        return complete(*ints)
    if kind == "theta":
        return theta(*ints)
    return disjoint_copies(cycle(3), ints[0])
