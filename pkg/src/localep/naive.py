"""Slow reference enumerator for H-subdivisions.

Shares nothing with :mod:`localep.subdivision` beyond the graph type: it lists
every simple path of the host up front and tries every combination of paths
for the pattern's edges in a fixed order.  Used by the certificate verifier
and as the test oracle.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from localep.graph import Graph


def simple_paths(G: Graph, alive: set[int]) -> dict[int, list[tuple[int, ...]]]:
    """Every simple path with at least one edge, grouped by first vertex."""
    out: dict[int, list[tuple[int, ...]]] = {v: [] for v in alive}

    def walk(path: list[int], on: set[int]) -> None:
        u = path[-1]
        for w in G.adj[u]:
            if w in alive and w not in on:
                path.append(w)
                on.add(w)
                out[path[0]].append(tuple(path))
                walk(path, on)
                on.discard(w)
                path.pop()

    for v in sorted(alive):
        walk([v], {v})
    return out


def naive_subdivisions(
    G: Graph, H: Graph, avoid: Iterable[int] = (), must_include: Iterable[int] = ()
) -> Iterator[tuple[dict[int, int], dict[tuple[int, int], tuple[int, ...]]]]:
    alive = set(G.vertices) - set(avoid)
    must = set(must_include)
    paths_from = simple_paths(G, alive)
    h_edges = sorted(H.edges)
    branch: dict[int, int] = {}
    chosen: dict[tuple[int, int], tuple[int, ...]] = {}
    interior_used: set[int] = set()

    def rec(idx: int):
        if idx == len(h_edges):
            if len(branch) != H.n:
                return
            cover = set(branch.values()) | interior_used
            if must <= cover:
                yield dict(branch), dict(chosen)
            return
        a, b = h_edges[idx]
        starts = [branch[a]] if a in branch else sorted(alive)
        for s in starts:
            for p in paths_from.get(s, ()):
                t = p[-1]
                inner = set(p[1:-1])
                if inner & interior_used:
                    continue
                if inner & set(branch.values()):
                    continue
                new = {}
                ok = True
                for h, v in ((a, s), (b, t)):
                    if h in branch:
                        if branch[h] != v:
                            ok = False
                    elif v in branch.values() or v in new.values() or v in interior_used:
                        ok = False
                    else:
                        new[h] = v
                if not ok or (set(new.values()) & inner):
                    continue
                if a not in branch and b not in branch and new.get(a) == new.get(b):
                    continue
                branch.update(new)
                chosen[(a, b)] = p
                interior_used.update(inner)
                yield from rec(idx + 1)
                interior_used.difference_update(inner)
                del chosen[(a, b)]
                for h in new:
                    del branch[h]

    yield from rec(0)


def naive_exists(
    G: Graph, H: Graph, avoid: Iterable[int] = (), must_include: Iterable[int] = ()
) -> bool:
    return next(naive_subdivisions(G, H, avoid, must_include), None) is not None


def naive_count(G: Graph, H: Graph, avoid: Iterable[int] = ()) -> int:
    """Distinct subdrawings: labelings identified when they use the same edge paths."""
    keys = set()
    for _, paths in naive_subdivisions(G, H, avoid):
        keys.add(frozenset(p if p[0] < p[-1] else p[::-1] for p in paths.values()))
    return len(keys)
