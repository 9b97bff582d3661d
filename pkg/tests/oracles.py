"""Brute-force reference computations for the test suite.

Nothing here calls the optimized search.  Pattern containment for the four
small patterns uses structural characterizations checked with networkx:

* C3: some cycle, i.e. a component with at least as many edges as vertices;
* C4: a cycle of length >= 4, i.e. a biconnected block on >= 4 vertices;
* P4: a path on 4 vertices, i.e. a component on >= 4 vertices that is not a star;
* K13: a vertex of degree >= 3.

Other patterns fall back to :mod:`localep.naive`.
"""

from __future__ import annotations

import itertools
from typing import Iterable

import networkx as nx

from localep.generators import cycle, path, star
from localep.graph import Graph
from localep.naive import naive_exists

PATTERNS = {"C3": cycle(3), "C4": cycle(4), "P4": path(4), "K13": star(3)}


def pattern_name(H: Graph) -> str | None:
    for name, P in PATTERNS.items():
        if P.n == H.n and P.edges == H.edges:
            return name
    return None


def to_nx(G: Graph, keep: Iterable[int] | None = None) -> nx.Graph:
    keep = set(G.vertices if keep is None else keep)
    g = nx.Graph()
    g.add_nodes_from(keep)
    g.add_edges_from((u, v) for u, v in G.edges if u in keep and v in keep)
    return g


def contains(G: Graph, H: Graph, keep: Iterable[int] | None = None) -> bool:
    """Does ``G[keep]`` contain an H-subdivision?"""
    name = pattern_name(H)
    keep = set(G.vertices if keep is None else keep)
    if name is None:
        return naive_exists(G, H, avoid=set(G.vertices) - keep)
    g = to_nx(G, keep)
    if name == "K13":
        return any(d >= 3 for _, d in g.degree())
    comps = [g.subgraph(c) for c in nx.connected_components(g)]
    if name == "C3":
        return any(c.number_of_edges() >= c.number_of_nodes() for c in comps)
    if name == "C4":
        return any(len(b) >= 4 for b in nx.biconnected_components(g))
    for c in comps:
        size = c.number_of_nodes()
        if size >= 4:
            is_star = c.number_of_edges() == size - 1 and max(d for _, d in c.degree()) == size - 1
            if not is_star:
                return True
    return False


def free_after(G: Graph, H: Graph, removed: Iterable[int]) -> bool:
    return not contains(G, H, set(G.vertices) - set(removed))


def brute_hitting_number(G: Graph, H: Graph) -> int:
    for r in range(G.n + 1):
        for Z in itertools.combinations(G.vertices, r):
            if free_after(G, H, Z):
                return r
    raise AssertionError("removing everything must leave nothing")


def brute_minimal_witnesses(G: Graph, H: Graph) -> list[frozenset[int]]:
    """Every inclusion-minimal vertex set inducing an H-subdivision, by full subset scan."""
    holds: dict[frozenset[int], bool] = {}
    minimal = []
    for r in range(G.n + 1):
        for W in itertools.combinations(G.vertices, r):
            W = frozenset(W)
            has = contains(G, H, W)
            holds[W] = has
            if has and not any(holds[W - {u}] for u in W):
                minimal.append(W)
    return minimal


def brute_packing_number(G: Graph, H: Graph) -> int:
    sets = brute_minimal_witnesses(G, H)

    def best(start: int, used: frozenset[int]) -> int:
        out = 0
        for i in range(start, len(sets)):
            if not sets[i] & used:
                out = max(out, 1 + best(i + 1, used | sets[i]))
        return out

    return best(0, frozenset())


def simple_paths_to(G: Graph, y: int, A: set[int], within: set[int]) -> list[tuple[int, ...]]:
    """Paths from y that stop at their first vertex of A and otherwise stay in ``within``."""
    out = []

    def walk(p: list[int]) -> None:
        for w in G.adj[p[-1]]:
            if w not in within or w in p:
                continue
            if w in A:
                out.append(tuple(p + [w]))
            else:
                walk(p + [w])

    walk([y])
    return out


def brute_disjoint_paths(G: Graph, y: int, A: set[int], cap: int, within: set[int] | None = None) -> int:
    """Largest number (capped) of y-A paths pairwise sharing only y."""
    within = set(G.vertices) if within is None else set(within)
    paths = simple_paths_to(G, y, A, within)

    def grow(start: int, used: set[int], have: int) -> int:
        if have >= cap:
            return have
        best = have
        for i in range(start, len(paths)):
            body = set(paths[i][1:])
            if not body & used:
                best = max(best, grow(i + 1, used | body, have + 1))
                if best >= cap:
                    break
        return best

    return grow(0, set(), 0)


def brute_unit_separation_sides(G: Graph, y: int, A: set[int], within: set[int] | None = None) -> list[frozenset[int]]:
    """For each single cut vertex x, the largest M with M & N = {x}, y in M - N, A within N."""
    within = set(G.vertices) if within is None else set(within)
    out = []
    for x in sorted(within - {y}):
        g = to_nx(G, within - {x})
        comps = list(nx.connected_components(g))
        if any(y in c and c & A for c in comps):
            continue
        M = {x}
        for c in comps:
            if not c & A:
                M |= c
        out.append(frozenset(M))
    return out


def is_valid_separation(G: Graph, M: set[int], N: set[int], y: int, A: set[int], within: set[int]) -> bool:
    if M | N != within or y not in M - N or not A <= N:
        return False
    return not any(
        (u in M - N and v in N - M) or (v in M - N and u in N - M) for u, v in G.edges
        if u in within and v in within
    )


def partition_paths(embeddings: list[dict], X: set[int]) -> list[tuple[int, ...]]:
    """Cut the recorded edge paths at X; independent of the library's own cutter."""
    out = []
    for emb in embeddings:
        for key in sorted(emb["paths"]):
            p = emb["paths"][key]
            idx = [i for i, v in enumerate(p) if v in X]
            assert idx and idx[0] == 0 and idx[-1] == len(p) - 1
            for a, b in zip(idx, idx[1:]):
                out.append(tuple(p[a : b + 1]))
    return out


def branch_set(embeddings: list[dict]) -> frozenset[int]:
    return frozenset(v for emb in embeddings for v in emb["branch"].values())
