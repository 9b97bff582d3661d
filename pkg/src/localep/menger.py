"""Vertex-capacitated max flow for Menger-type path systems and separations.

Every vertex other than the source ``y`` is split into an in-node and an
out-node joined by a unit arc; members of ``A`` are terminal and drain
straight into a super-sink, so a flow path meets ``A`` only at its far end.
Graph edges become uncapacitated arcs, which forces every minimum cut onto
vertices.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable

from localep.errors import MalformedInput, NoDangerousPath, WrongBranch
from localep.graph import Graph, Path, Separation

_INF = 1 << 30


class _Network:
    def __init__(self, g: Graph, y: int, A: frozenset[int], within: frozenset[int]):
        self.g = g
        self.y = y
        self.A = A
        self.within = within
        self.sink = 2 * g.n
        self.source = 2 * y + 1
        self.cap: dict[int, dict[int, int]] = {}
        for v in sorted(within):
            if v == y:
                continue
            if v in A:
                self._arc(2 * v, self.sink, 1)
            else:
                self._arc(2 * v, 2 * v + 1, 1)
        for v in sorted(within):
            if v in A:
                continue
            for w in g.adj[v]:
                if w in within and w != y:
                    self._arc(2 * v + 1, 2 * w, _INF)
        self.flow_value = 0

    def _arc(self, u: int, v: int, c: int) -> None:
        self.cap.setdefault(u, {})
        self.cap.setdefault(v, {})
        self.cap[u][v] = self.cap[u].get(v, 0) + c
        self.cap[v].setdefault(u, 0)

    def _augment(self) -> bool:
        parent = {self.source: None}
        queue = deque([self.source])
        while queue:
            u = queue.popleft()
            for v in sorted(self.cap.get(u, ())):
                if v not in parent and self.cap[u][v] > 0:
                    parent[v] = u
                    if v == self.sink:
                        queue.clear()
                        break
                    queue.append(v)
        if self.sink not in parent:
            return False
        v = self.sink
        while parent[v] is not None:
            u = parent[v]
            self.cap[u][v] -= 1
            self.cap[v][u] += 1
            v = u
        self.flow_value += 1
        return True

    def run(self, limit: int) -> int:
        while self.flow_value < limit and self._augment():
            pass
        return self.flow_value

    def _pushed(self, u: int, v: int) -> bool:
        # on a unit or uncapacitated arc, a positive reverse residual means flow u->v
        return self.cap[v].get(u, 0) > 0 and self._original(u, v)

    def _original(self, u: int, v: int) -> bool:
        if v == self.sink:
            return u % 2 == 0
        if u // 2 == v // 2:
            return u % 2 == 0
        return u % 2 == 1 and v % 2 == 0

    def paths(self) -> list[Path]:
        out = []
        starts = [v for v in sorted(self.cap[self.source]) if self._pushed(self.source, v)]
        for first in starts:
            seq = [self.y]
            node = first
            while True:
                vertex = node // 2
                seq.append(vertex)
                if vertex in self.A:
                    break
                out_node = 2 * vertex + 1
                node = next(w for w in sorted(self.cap[out_node]) if self._pushed(out_node, w))
            out.append(tuple(seq))
        return out

    def source_side(self) -> set[int]:
        seen = {self.source}
        queue = deque([self.source])
        while queue:
            u = queue.popleft()
            for v, c in self.cap.get(u, {}).items():
                if c > 0 and v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen

    def sink_side(self) -> set[int]:
        seen = {self.sink}
        queue = deque([self.sink])
        while queue:
            v = queue.popleft()
            for u in self.cap.get(v, {}):
                if u not in seen and self.cap[u][v] > 0:
                    seen.add(u)
                    queue.append(u)
        return seen


def _prepare(g: Graph, y: int, A: Iterable[int], within: Iterable[int] | None):
    universe = frozenset(g.vertices if within is None else within)
    A = frozenset(A)
    if y not in universe:
        raise MalformedInput(f"source {y} not in graph")
    if not A <= universe:
        raise MalformedInput("A must be a subset of the graph's vertices")
    if y in A:
        raise MalformedInput("source may not belong to A")
    return universe, A


def disjoint_paths_or_separation(
    g: Graph, y: int, A: Iterable[int], j: int, within: Iterable[int] | None = None
) -> list[Path] | Separation:
    """Either ``j`` paths from ``y`` to ``A`` meeting only at ``y``, or a separation.

    The separation has ``|M & N| < j``, ``y`` in ``M - N`` and ``A`` inside ``N``;
    among such it is the one closest to ``y``.  ``within`` restricts the search
    to an induced subgraph without relabeling.
    """
    if j < 0:
        raise MalformedInput("j must be nonnegative")
    universe, A = _prepare(g, y, A, within)
    net = _Network(g, y, A, universe)
    if net.run(j) >= j:
        return net.paths()
    reach = net.source_side()
    M = {y} | {v for v in universe if 2 * v in reach}
    cut = {v for v in M if v != y and (v in A or 2 * v + 1 not in reach)}
    N = (universe - M) | cut
    return Separation(frozenset(M), frozenset(N))


def maximal_separation(
    g: Graph, y: int, A: Iterable[int], within: Iterable[int] | None = None
) -> tuple[Separation, int]:
    """The unit separation with inclusion-wise maximal ``M`` (the cut nearest ``A``)."""
    universe, A = _prepare(g, y, A, within)
    net = _Network(g, y, A, universe)
    value = net.run(2)
    if value == 0:
        raise NoDangerousPath(f"no path from {y} to A")
    if value >= 2:
        raise WrongBranch(f"two paths from {y} to A that meet only at {y}")
    back = net.sink_side()
    N = {v for v in universe if v != y and 2 * v in back}
    cuts = [
        v
        for v in sorted(universe)
        if v != y and 2 * v not in back and (v in A or 2 * v + 1 in back)
    ]
    assert len(cuts) == 1, cuts
    x = cuts[0]
    N.add(x)
    M = (universe - N) | {x}
    return Separation(frozenset(M), frozenset(N)), x


def fan_from_cut(
    g: Graph, sep: Separation, x: int, A: Iterable[int], within: Iterable[int] | None = None
) -> tuple[Path, Path]:
    """Two paths from cut vertex ``x`` into ``A`` inside ``N``, disjoint except at ``x``."""
    A = frozenset(A)
    universe = frozenset(g.vertices if within is None else within)
    res = disjoint_paths_or_separation(g, x, A, 2, within=sep.N & universe)
    if isinstance(res, Separation):
        raise WrongBranch(f"cut vertex {x} does not fan out to A; M was not maximal")
    return res[0], res[1]


def max_disjoint_paths(g: Graph, y: int, A: Iterable[int], within: Iterable[int] | None = None) -> int:
    universe, A = _prepare(g, y, A, within)
    net = _Network(g, y, A, universe)
    return net.run(len(universe))
