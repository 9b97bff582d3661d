"""H-subdivision embeddings and a constrained backtracking detector.

An embedding maps each vertex of the pattern ``H`` to a branch vertex of the
host and each edge of ``H`` to a host path between the matching branch
vertices, with the paths meeting only at shared ends.  The detector assigns
branch vertices one at a time (most-constrained pattern vertex first) and
routes every pattern edge as soon as both of its ends are placed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from localep.errors import BudgetExceeded, MalformedInput, UnsupportedPattern
from localep.graph import Graph, Path, is_path_in

DEFAULT_MAX_NODES = 10**8


@dataclass(frozen=True, eq=True)
class SubdivisionEmbedding:
    branch: dict[int, int]
    paths: dict[tuple[int, int], Path]

    __hash__ = None  # type: ignore[assignment]

    def vertex_set(self) -> frozenset[int]:
        vs = set(self.branch.values())
        for p in self.paths.values():
            vs.update(p)
        return frozenset(vs)

    def branch_vertices(self) -> frozenset[int]:
        return frozenset(self.branch.values())

    def key(self) -> frozenset[Path]:
        """Identity up to relabeling H: the set of undirected edge paths."""
        return frozenset(p if p[0] < p[-1] else p[::-1] for p in self.paths.values())

    def edge_path(self, e: tuple[int, int]) -> Path:
        return self.paths[e]

    def replace_path(self, e: tuple[int, int], path: Path) -> "SubdivisionEmbedding":
        paths = dict(self.paths)
        paths[e] = tuple(path)
        return SubdivisionEmbedding(dict(self.branch), paths)

    def to_dict(self) -> dict:
        """Edge path ``"u-v"`` is written from the image of u to the image of v."""
        paths = {}
        for (u, v), p in sorted(self.paths.items()):
            paths[f"{u}-{v}"] = list(p if p[0] == self.branch[u] else p[::-1])
        return {"branch": {str(h): v for h, v in sorted(self.branch.items())}, "paths": paths}

    @classmethod
    def from_dict(cls, data: dict) -> "SubdivisionEmbedding":
        try:
            branch = {int(h): int(v) for h, v in data["branch"].items()}
            paths = {}
            for key, p in data["paths"].items():
                u, v = (int(t) for t in key.split("-"))
                paths[(min(u, v), max(u, v))] = tuple(int(x) for x in p)
        except (KeyError, ValueError, AttributeError, TypeError) as exc:
            raise MalformedInput(f"bad embedding JSON: {exc}") from exc
        return cls(branch, paths)


def validate_pattern(H: Graph) -> None:
    if H.m == 0:
        raise UnsupportedPattern("pattern must have at least one edge")
    if H.has_isolated_vertices():
        raise UnsupportedPattern("pattern may not have isolated vertices")


def verify_embedding(G: Graph, H: Graph, emb: SubdivisionEmbedding) -> bool:
    branch = emb.branch
    if set(branch) != set(H.vertices):
        return False
    if len(set(branch.values())) != H.n:
        return False
    if any(not 0 <= v < G.n for v in branch.values()):
        return False
    if set(emb.paths) != set(H.edges):
        return False
    bset = set(branch.values())
    seen_interior: set[int] = set()
    for (u, v), p in emb.paths.items():
        if not is_path_in(G, p) or len(p) < 2:
            return False
        if {p[0], p[-1]} != {branch[u], branch[v]}:
            return False
        inner = set(p[1:-1])
        if inner & bset or inner & seen_interior:
            return False
        seen_interior |= inner
    return True


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _reach(masks: tuple[int, ...], start: int, allowed: int) -> int:
    """Vertices of ``allowed`` reachable from the seed set ``start`` (seeds included)."""
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= masks[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def _mask(vs: Iterable[int]) -> int:
    out = 0
    for v in vs:
        out |= 1 << v
    return out


def _core(masks: tuple[int, ...], alive: int, k: int) -> int:
    changed = True
    while changed:
        changed = False
        for v in _bits(alive):
            if (masks[v] & alive).bit_count() < k:
                alive &= ~(1 << v)
                changed = True
    return alive


def _pattern_order(H: Graph) -> tuple[list[int], list[list[int]]]:
    order: list[int] = []
    placed: set[int] = set()
    while len(order) < H.n:
        best = max(
            (h for h in H.vertices if h not in placed),
            key=lambda h: (sum(1 for w in H.adj[h] if w in placed), H.degree(h), -h),
        )
        order.append(best)
        placed.add(best)
    back = [sorted(w for w in H.adj[h] if w in set(order[:i])) for i, h in enumerate(order)]
    return order, back


class _Search:
    def __init__(self, G: Graph, H: Graph, alive: int, must: int, max_nodes: int):
        self.G = G
        self.H = H
        self.masks = G.masks
        self.alive = alive
        self.must = must
        self.max_nodes = max_nodes
        self.nodes = 0
        self.order, self.back = _pattern_order(H)
        self.phi = [-1] * H.n
        self.used = 0
        self.paths: dict[tuple[int, int], Path] = {}
        self.routed_deg = [0] * H.n
        deg_alive = {v: (G.masks[v] & alive).bit_count() for v in _bits(alive)}
        ranked = sorted(deg_alive, key=lambda v: (-deg_alive[v], v))
        self.candidates = [[v for v in ranked if deg_alive[v] >= H.degree(h)] for h in range(H.n)]
        self.connected = H.is_connected()

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExceeded("search nodes", self.max_nodes)

    def run(self) -> Iterator[SubdivisionEmbedding]:
        yield from self._assign(0)

    def _assign(self, i: int) -> Iterator[SubdivisionEmbedding]:
        if i == self.H.n:
            if self.must & ~self.used == 0:
                yield SubdivisionEmbedding(
                    {h: self.phi[h] for h in self.H.vertices}, dict(self.paths)
                )
            return
        h = self.order[i]
        for v in self.candidates[h]:
            bit = 1 << v
            if self.used & bit:
                continue
            self._tick()
            self.phi[h] = v
            self.used |= bit
            yield from self._route(i, 0)
            self.used &= ~bit
            self.phi[h] = -1

    def _open_images(self) -> int:
        out = 0
        for h in self.H.vertices:
            if self.phi[h] >= 0 and self.routed_deg[h] < self.H.degree(h):
                out |= 1 << self.phi[h]
        return out

    def _must_feasible(self, i: int) -> bool:
        left = self.must & ~self.used
        if not left:
            return True
        if not self.connected and i + 1 < self.H.n:
            return True
        opened = self._open_images()
        if not opened:
            return False
        free = self.alive & ~self.used
        seed = 0
        for v in _bits(opened):
            seed |= self.masks[v]
        seed &= free
        return left & ~_reach(self.masks, seed, free) == 0

    def _route(self, i: int, k: int) -> Iterator[SubdivisionEmbedding]:
        if not self._must_feasible(i):
            return
        h = self.order[i]
        back = self.back[i]
        if k == len(back):
            yield from self._assign(i + 1)
            return
        p = back[k]
        e = (min(h, p), max(h, p))
        last = i == self.H.n - 1 and k == len(back) - 1
        need = (self.must & ~self.used) if last else 0
        for path in self._paths(self.phi[p], self.phi[h], need):
            inner = _mask(path[1:-1])
            self.used |= inner
            self.paths[e] = path
            self.routed_deg[h] += 1
            self.routed_deg[p] += 1
            yield from self._route(i, k + 1)
            self.routed_deg[h] -= 1
            self.routed_deg[p] -= 1
            del self.paths[e]
            self.used &= ~inner

    def _paths(self, s: int, t: int, need: int) -> Iterator[Path]:
        masks = self.masks
        free = self.alive & ~self.used
        tbit = 1 << t
        # distances to t through free vertices; orders the extension greedily
        dist = {t: 0}
        frontier = [t]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for w in self.G.adj[u]:
                    if w not in dist and (free >> w) & 1:
                        dist[w] = d
                        nxt.append(w)
            frontier = nxt
        if not any(w in dist for w in self.G.adj[s]):
            return
        key = dist.__getitem__
        path = [s]
        visited = (1 << s) | tbit

        def extend(c: int) -> Iterator[Path]:
            nonlocal visited
            nbrs = [w for w in self.G.adj[c] if w == t or (w in dist and not (visited >> w) & 1)]
            nbrs.sort(key=lambda w: (key(w), w))
            for w in nbrs:
                self._tick()
                if w == t:
                    if need & ~visited == 0:
                        yield tuple(path) + (t,)
                    continue
                visited |= 1 << w
                room = (free & ~visited) | tbit
                reach = _reach(masks, masks[w] & room, room)
                if reach & tbit and not (need & ~visited & ~reach):
                    path.append(w)
                    yield from extend(w)
                    path.pop()
                visited &= ~(1 << w)

        yield from extend(s)


def _search_spaces(G: Graph, H: Graph, avoid: Iterable[int], must: frozenset[int]) -> list[int]:
    alive = ((1 << G.n) - 1) & ~_mask(avoid)
    if H.min_degree() >= 2:
        alive = _core(G.masks, alive, 2)
    if _mask(must) & ~alive:
        return []
    if not H.is_connected():
        return [alive] if alive.bit_count() >= H.n else []
    need_cycles = H.m - H.n + 1
    big_deg = sorted((H.degree(h) for h in H.vertices), reverse=True)
    spaces = []
    for comp in G.components(within=_bits(alive)):
        cmask = _mask(comp)
        if _mask(must) & ~cmask:
            continue
        if len(comp) < H.n:
            continue
        edges = sum((G.masks[v] & cmask).bit_count() for v in comp) // 2
        if edges - len(comp) + 1 < need_cycles:
            continue
        degs = sorted(((G.masks[v] & cmask).bit_count() for v in comp), reverse=True)
        if any(degs[i] < big_deg[i] for i in range(H.n)):
            continue
        spaces.append(cmask)
    return spaces


def iter_subdivisions(
    G: Graph,
    H: Graph,
    avoid: Iterable[int] = (),
    must_include: Iterable[int] = (),
    max_nodes: int = DEFAULT_MAX_NODES,
    within: Iterable[int] | None = None,
) -> Iterator[SubdivisionEmbedding]:
    """All embeddings (every branch labeling) meeting the constraints, in search order."""
    validate_pattern(H)
    avoid = set(avoid)
    must = frozenset(must_include)
    if within is not None:
        avoid |= set(G.vertices) - set(within)
    if must & avoid:
        raise MalformedInput("avoid and must_include overlap")
    spaces = _search_spaces(G, H, avoid, must)
    budget = max_nodes
    for space in spaces:
        search = _Search(G, H, space, _mask(must), budget)
        yield from search.run()
        budget -= search.nodes


def find_subdivision(
    G: Graph,
    H: Graph,
    avoid: Iterable[int] = (),
    must_include: Iterable[int] = (),
    max_nodes: int = DEFAULT_MAX_NODES,
    within: Iterable[int] | None = None,
) -> SubdivisionEmbedding | None:
    return next(iter_subdivisions(G, H, avoid, must_include, max_nodes, within), None)


def is_subdivision_free(
    G: Graph, H: Graph, X: Iterable[int] = (), max_nodes: int = DEFAULT_MAX_NODES
) -> bool:
    return find_subdivision(G, H, avoid=X, max_nodes=max_nodes) is None


def enumerate_subdivisions(
    G: Graph,
    H: Graph,
    avoid: Iterable[int] = (),
    limit: int = 1,
    max_nodes: int = DEFAULT_MAX_NODES,
    must_include: Iterable[int] = (),
) -> list[SubdivisionEmbedding]:
    """Up to ``limit`` embeddings, one per distinct subgraph-with-branch-vertices.

    Two labelings that differ only by an automorphism of H describe the same
    set of edge paths and are reported once.
    """
    if limit < 1:
        raise MalformedInput("limit must be at least 1")
    out: list[SubdivisionEmbedding] = []
    seen: set[frozenset[Path]] = set()
    for emb in iter_subdivisions(G, H, avoid, must_include, max_nodes):
        k = emb.key()
        if k in seen:
            continue
        seen.add(k)
        out.append(emb)
        if len(out) >= limit:
            break
    return out
