"""Hitting triples and the score-decreasing rewrite loop.

A hitting triple ``(S, X, Y)`` pairs ``k`` disjoint H-subdivisions ``S`` with a
set ``X`` inside them (holding every branch vertex) and an ordered set ``Y``
outside them, such that deleting ``X | Y`` kills every H-subdivision.  The
loop below repeatedly takes the largest ``y`` in ``Y`` and either drops it or
rewrites ``S``/``X`` along the active paths for it, until ``Y`` is empty and
``X`` alone is a hitting set localized inside ``S``.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from typing import Iterable

from localep.errors import BudgetExceeded, InvariantError, MalformedInput
from localep.graph import Graph, Path, Separation
from localep.menger import disjoint_paths_or_separation, fan_from_cut, maximal_separation
from localep.packing import (
    locality_bound,
    max_packing_from_sets,
    min_hitting_set_from_sets,
    minimal_witness_sets,
    packing_embeddings,
)
from localep.subdivision import (
    DEFAULT_MAX_NODES,
    SubdivisionEmbedding,
    find_subdivision,
    is_subdivision_free,
    validate_pattern,
    verify_embedding,
)

log = logging.getLogger(__name__)

DEFAULT_MAX_STEPS = 100_000


@dataclass(frozen=True)
class HittingTriple:
    S: tuple[SubdivisionEmbedding, ...]
    X: frozenset[int]
    Y: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.S)

    def s_vertices(self) -> frozenset[int]:
        out: set[int] = set()
        for emb in self.S:
            out |= emb.vertex_set()
        return frozenset(out)

    def branch_vertices(self) -> frozenset[int]:
        out: set[int] = set()
        for emb in self.S:
            out |= emb.branch_vertices()
        return frozenset(out)


@dataclass(frozen=True)
class PartitionPath:
    vertices: Path
    owner: int
    edge: tuple[int, int]
    offset: int  # index of vertices[0] within the owner's edge path

    @property
    def interior(self) -> tuple[int, ...]:
        return self.vertices[1:-1]


@dataclass(frozen=True)
class TypeI:
    paths: tuple[Path, Path]  # each from y_d to a distinct interior vertex


@dataclass(frozen=True)
class TypeII:
    x: int


@dataclass(frozen=True)
class TypeIII:
    x: int
    P_a: Path
    P_b: Path
    separation: Separation


@dataclass
class StepRecord:
    kind: str
    round: int
    y_index: int | None
    y: int | None
    path: Path | None
    added: int | None
    score_before: int
    score_after: int
    N: list[int]
    partition_size: int
    X_size: int
    Y_size: int
    checks: dict[str, bool] = field(default_factory=dict)
    note: str = ""
    X: list[int] = field(default_factory=list)
    Y: list[int] = field(default_factory=list)
    S: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "round": self.round,
            "y_index": self.y_index,
            "y": self.y,
            "path": list(self.path) if self.path is not None else None,
            "added": self.added,
            "score_before": str(self.score_before),
            "score_after": str(self.score_after),
            "N": self.N,
            "partition_size": self.partition_size,
            "X_size": self.X_size,
            "Y_size": self.Y_size,
            "checks": self.checks,
            "note": self.note,
            "X": self.X,
            "Y": self.Y,
            "S": self.S,
        }


@dataclass
class RoundRecord:
    y: int
    d: int
    N_d_start: int
    operations: int
    score_start: int
    score_end: int
    C: int

    @property
    def decrease(self) -> int:
        return self.score_start - self.score_end

    def to_dict(self) -> dict:
        return {
            "y": self.y,
            "d": self.d,
            "N_d_start": self.N_d_start,
            "operations": self.operations,
            "score_start": str(self.score_start),
            "score_end": str(self.score_end),
            "C": str(self.C),
        }


@dataclass
class Certificate:
    G: Graph
    H: Graph
    k: int
    l: int
    z: int
    Z: list[int]
    embeddings: list[SubdivisionEmbedding]
    X: list[int]
    bound_stated: int
    bound_derived: int
    trace: list[StepRecord]
    rounds: list[RoundRecord]
    status: str = "ok"
    warnings: list[str] = field(default_factory=list)
    message: str = ""
    seconds: float = 0.0

    @property
    def C(self) -> int:
        return (1 << self.z) * self.H.m * self.k

    def to_dict(self) -> dict:
        return {
            "graph": self.G.to_dict(),
            "pattern": self.H.to_dict(),
            "k": self.k,
            "l": self.l,
            "z": self.z,
            "Z": self.Z,
            "C": str(self.C),
            "embeddings": [e.to_dict() for e in self.embeddings],
            "X": self.X,
            "bound_stated": str(self.bound_stated),
            "bound_derived": str(self.bound_derived),
            "trace": [s.to_dict() for s in self.trace],
            "rounds": [r.to_dict() for r in self.rounds],
            "status": self.status,
            "warnings": self.warnings,
            "message": self.message,
        }


@dataclass
class LocalizeConfig:
    max_steps: int = DEFAULT_MAX_STEPS
    max_search_nodes: int = DEFAULT_MAX_NODES
    check_invariants: bool = True
    minimize_y: bool = True


class DangerOracle:
    """Memoized answers to "does some X-avoiding subdivision pass through v and y?"."""

    def __init__(self, G: Graph, H: Graph, max_nodes: int = DEFAULT_MAX_NODES):
        self.G = G
        self.H = H
        self.max_nodes = max_nodes
        self.connected = H.is_connected()
        self._known: dict[tuple[frozenset[int], int], dict[int, bool]] = {}

    def on_common_subdivision(self, X: frozenset[int], y: int, v: int) -> bool:
        known = self._known.setdefault((X, y), {})
        if v in known:
            return known[v]
        emb = find_subdivision(
            self.G, self.H, avoid=X, must_include={v, y}, max_nodes=self.max_nodes
        )
        if emb is None:
            known[v] = False
            return False
        for w in emb.vertex_set():
            known[w] = True
        return True

    def dangerous(self, X: frozenset[int], s_vertices: frozenset[int], y: int) -> frozenset[int]:
        if y in X:
            return frozenset()
        if self.connected:
            pool = next(c for c in self.G.components(within=set(self.G.vertices) - X) if y in c)
        else:
            pool = [v for v in self.G.vertices if v not in X]
        return frozenset(
            v for v in pool if v not in s_vertices and self.on_common_subdivision(X, y, v)
        )


def check_triple(G: Graph, H: Graph, triple: HittingTriple, max_nodes: int = DEFAULT_MAX_NODES) -> None:
    seen: set[int] = set()
    for emb in triple.S:
        if not verify_embedding(G, H, emb):
            raise InvariantError("S contains an invalid embedding")
        vs = emb.vertex_set()
        if vs & seen:
            raise InvariantError("embeddings of S are not vertex-disjoint")
        seen |= vs
    if not triple.X <= seen:
        raise InvariantError("X is not contained in V(S)")
    if not triple.branch_vertices() <= triple.X:
        raise InvariantError("X misses a branch vertex")
    if set(triple.Y) & seen:
        raise InvariantError("Y meets V(S)")
    if list(triple.Y) != sorted(set(triple.Y)):
        raise InvariantError("Y is not in canonical order")
    if not is_subdivision_free(G, H, triple.X | set(triple.Y), max_nodes=max_nodes):
        raise InvariantError("G - (X | Y) still contains a subdivision")


def initial_triple(
    G: Graph,
    H: Graph,
    k: int,
    Z: Iterable[int],
    packing: list[SubdivisionEmbedding],
    max_nodes: int = DEFAULT_MAX_NODES,
) -> HittingTriple:
    Z = frozenset(Z)
    if len(packing) != k:
        raise MalformedInput(f"packing has {len(packing)} embeddings, expected {k}")
    if not is_subdivision_free(G, H, Z, max_nodes=max_nodes):
        raise MalformedInput("Z is not a hitting set")
    S = tuple(packing)
    vs: set[int] = set()
    branch: set[int] = set()
    for emb in S:
        vs |= emb.vertex_set()
        branch |= emb.branch_vertices()
    triple = HittingTriple(S, frozenset((vs & Z) | branch), tuple(sorted(Z - vs)))
    check_triple(G, H, triple, max_nodes)
    if not is_acceptable(H, triple, len(Z)):
        raise InvariantError("initial triple is not acceptable")
    return triple


def path_partition(H: Graph, triple: HittingTriple) -> list[PartitionPath]:
    """Cut the edge paths of S at the vertices of X."""
    out = []
    for j, emb in enumerate(triple.S):
        for e in sorted(emb.paths):
            p = emb.paths[e]
            cuts = [i for i, v in enumerate(p) if v in triple.X]
            if cuts[0] != 0 or cuts[-1] != len(p) - 1:
                raise InvariantError("an edge path does not end in X")
            for a, b in zip(cuts, cuts[1:]):
                out.append(PartitionPath(p[a : b + 1], j, e, a))
    expected = len(triple.X) + triple.k * (H.m - H.n)
    if len(out) != expected:
        raise InvariantError(f"partition has {len(out)} paths, identity gives {expected}")
    return out


def is_acceptable(H: Graph, triple: HittingTriple, z: int) -> bool:
    size = len(triple.X) + triple.k * (H.m - H.n)
    exp = z - len(triple.Y)
    if exp < 0:
        return False
    return size <= (1 << exp) * H.m * triple.k


def _danger_graph(triple: HittingTriple, dangerous: frozenset[int], i: int) -> frozenset[int]:
    # members of Y never serve as interior vertices of dangerous paths
    return dangerous - set(triple.Y)


def active_paths(
    G: Graph,
    triple: HittingTriple,
    partition: list[PartitionPath],
    dangerous: frozenset[int],
    i: int,
) -> tuple[list[PartitionPath], int]:
    """Partition paths whose interior reaches ``y_i`` through dangerous vertices."""
    y = triple.Y[i - 1]
    inner = _danger_graph(triple, dangerous, i)
    reached = {y}
    stack = [y]
    while stack:
        u = stack.pop()
        for w in G.adj[u]:
            if w in inner and w not in reached:
                reached.add(w)
                stack.append(w)
    touch: set[int] = set()
    for u in reached:
        touch.update(G.adj[u])
    act = [P for P in partition if touch.intersection(P.interior)]
    return act, len(act)


def classify_active_path(
    G: Graph, triple: HittingTriple, P: PartitionPath, d: int, dangerous: frozenset[int]
) -> TypeI | TypeII | TypeIII:
    y = triple.Y[d - 1]
    A = frozenset(P.interior)
    within = A | _danger_graph(triple, dangerous, d) | {y}
    res = disjoint_paths_or_separation(G, y, A, 2, within=within)
    if not isinstance(res, Separation):
        return TypeI((res[0], res[1]))
    sep, x = maximal_separation(G, y, A, within=within)
    if x in A:
        return TypeII(x)
    P_a, P_b = fan_from_cut(G, sep, x, A, within=within)
    return TypeIII(x, P_a, P_b, sep)


def _reroute(triple: HittingTriple, P: PartitionPath, pa: Path, pb: Path) -> tuple[SubdivisionEmbedding, ...]:
    """Replace the stretch of P between the far ends of ``pa``/``pb`` by ``pa + pb``.

    ``pa`` and ``pb`` start at a common vertex outside S and end at two
    distinct interior vertices of P.
    """
    emb = triple.S[P.owner]
    ep = emb.paths[P.edge]
    ia = ep.index(pa[-1])
    ib = ep.index(pb[-1])
    if ia > ib:
        pa, pb, ia, ib = pb, pa, ib, ia
    segment = tuple(reversed(pa)) + tuple(pb[1:])
    new_path = ep[:ia] + segment + ep[ib + 1 :]
    S = list(triple.S)
    S[P.owner] = emb.replace_path(P.edge, new_path)
    return tuple(S)


def apply_type_i(triple: HittingTriple, P: PartitionPath, witness: TypeI) -> HittingTriple:
    y = triple.Y[-1]
    pa, pb = witness.paths
    S = _reroute(triple, P, pa, pb)
    return HittingTriple(S, triple.X | {y}, triple.Y[:-1])


def apply_type_ii(triple: HittingTriple, P: PartitionPath, x: int) -> HittingTriple:
    if x not in P.interior:
        raise InvariantError("type II vertex is not interior to the path")
    return HittingTriple(triple.S, triple.X | {x}, triple.Y)


def apply_type_iii(
    triple: HittingTriple, P: PartitionPath, x: int, P_a: Path, P_b: Path
) -> HittingTriple:
    S = _reroute(triple, P, P_a, P_b)
    return HittingTriple(S, triple.X | {x}, triple.Y)


def prune_y(triple: HittingTriple, d: int) -> HittingTriple:
    Y = list(triple.Y)
    del Y[d - 1]
    return HittingTriple(triple.S, triple.X, tuple(Y))


def score(N: list[int], C: int) -> int:
    return sum(C ** (i + 1) * n for i, n in enumerate(N))


class _Run:
    def __init__(self, G: Graph, H: Graph, config: LocalizeConfig):
        self.G = G
        self.H = H
        self.config = config
        self.oracle = DangerOracle(G, H, config.max_search_nodes)
        self.trace: list[StepRecord] = []
        self.rounds: list[RoundRecord] = []
        self.warnings: list[str] = []
        self.steps = 0
        self.branch0: frozenset[int] = frozenset()

    def dangerous(self, triple: HittingTriple, i: int) -> frozenset[int]:
        return self.oracle.dangerous(triple.X, triple.s_vertices(), triple.Y[i - 1])

    def n_vector(self, triple: HittingTriple, partition: list[PartitionPath]) -> list[int]:
        return [
            active_paths(self.G, triple, partition, self.dangerous(triple, i), i)[1]
            for i in range(1, len(triple.Y) + 1)
        ]

    def record(self, kind, rnd, triple, before, after, N, partition, z, **kw) -> StepRecord:
        checks = {
            "partition_identity": len(partition) == len(triple.X) + triple.k * (self.H.m - self.H.n),
            "acceptable": is_acceptable(self.H, triple, z),
            "branch_preserved": triple.branch_vertices() == self.branch0,
        }
        if self.config.check_invariants:
            check_triple(self.G, self.H, triple, self.config.max_search_nodes)
            checks["hitting_triple"] = True
        rec = StepRecord(
            kind=kind,
            round=rnd,
            score_before=before,
            score_after=after,
            N=N,
            partition_size=len(partition),
            X_size=len(triple.X),
            Y_size=len(triple.Y),
            checks=checks,
            y_index=kw.get("y_index"),
            y=kw.get("y"),
            path=kw.get("path"),
            added=kw.get("added"),
            note=kw.get("note", ""),
            X=sorted(triple.X),
            Y=list(triple.Y),
            S=[e.to_dict() for e in triple.S],
        )
        if not checks["branch_preserved"] or not checks["partition_identity"]:
            raise InvariantError(f"step {kind}: {checks}")
        self.trace.append(rec)
        return rec

    def tick(self) -> None:
        self.steps += 1
        if self.steps > self.config.max_steps:
            raise BudgetExceeded("rewrite steps", self.config.max_steps)

    def minimize_y(self, triple: HittingTriple, z: int, C: int, rnd: int) -> HittingTriple:
        """Drop members of Y (largest first) that the hitting property does not need."""
        i = len(triple.Y)
        while i >= 1:
            rest = triple.X | (set(triple.Y) - {triple.Y[i - 1]})
            if is_subdivision_free(self.G, self.H, rest, self.config.max_search_nodes):
                self.tick()
                partition = path_partition(self.H, triple)
                before = score(self.n_vector(triple, partition), C)
                y = triple.Y[i - 1]
                triple = prune_y(triple, i)
                partition = path_partition(self.H, triple)
                N = self.n_vector(triple, partition)
                self.record(
                    "prune_y", rnd, triple, before, score(N, C), N, partition, z,
                    y_index=i, y=y, note="redundant",
                )
            i -= 1
        return triple

    def run_round(self, triple: HittingTriple, z: int, C: int, rnd: int) -> HittingTriple:
        d = len(triple.Y)
        y = triple.Y[-1]
        partition = path_partition(self.H, triple)
        N = self.n_vector(triple, partition)
        start_score = score(N, C)
        n_d_start = N[d - 1]
        ops = 0
        while True:
            self.tick()
            before = score(N, C)
            danger = self.dangerous(triple, d)
            act, n_d = active_paths(self.G, triple, partition, danger, d)
            if n_d == 0:
                triple = prune_y(triple, d)
                partition = path_partition(self.H, triple)
                N = self.n_vector(triple, partition)
                self.record("prune_y", rnd, triple, before, score(N, C), N, partition, z,
                            y_index=d, y=y, note="inactive")
                break
            P = min(act, key=lambda q: min(q.interior))
            kind = classify_active_path(self.G, triple, P, d, danger)
            if isinstance(kind, TypeI):
                triple = apply_type_i(triple, P, kind)
                tag, added = "type_i", y
            elif isinstance(kind, TypeII):
                triple = apply_type_ii(triple, P, kind.x)
                tag, added = "type_ii", kind.x
                ops += 1
            else:
                triple = apply_type_iii(triple, P, kind.x, kind.P_a, kind.P_b)
                tag, added = "type_iii", kind.x
                ops += 1
            partition = path_partition(self.H, triple)
            N = self.n_vector(triple, partition)
            self.record(tag, rnd, triple, before, score(N, C), N, partition, z,
                        y_index=d, y=y, path=P.vertices, added=added)
            if tag == "type_i":
                ops += 1
                break
        end_score = score(N, C)
        self.rounds.append(RoundRecord(y, d, n_d_start, ops, start_score, end_score, C))
        if ops > max(n_d_start, 1):
            self.warnings.append(
                f"round for y={y}: {ops} rewrites exceeded the starting count N_d={n_d_start}"
            )
        return triple

    def loop(self, triple: HittingTriple, z: int) -> HittingTriple:
        """Drive Y to empty; ``self.triple`` tracks the latest state for partial results."""
        C = (1 << z) * self.H.m * triple.k
        self.triple = triple
        self.branch0 = triple.branch_vertices()
        partition = path_partition(self.H, triple)
        N = self.n_vector(triple, partition)
        self.record("init", 0, triple, score(N, C), score(N, C), N, partition, z)
        rnd = 0
        while triple.Y:
            rnd += 1
            if self.config.minimize_y:
                triple = self.minimize_y(triple, z, C, rnd)
                self.triple = triple
            if not triple.Y:
                break
            triple = self.run_round(triple, z, C, rnd)
            self.triple = triple
        return triple


def rewrite(
    G: Graph, H: Graph, triple: HittingTriple, z: int, config: LocalizeConfig | None = None
) -> tuple[HittingTriple, list[StepRecord], list[RoundRecord], list[str]]:
    """Run the rewrite loop from an arbitrary acceptable hitting triple.

    ``S`` must be a maximum packing for pruning steps to be sound; that is
    re-checked on every step when invariant checking is on.
    """
    run = _Run(G, H, config or LocalizeConfig())
    final = run.loop(triple, z)
    return final, run.trace, run.rounds, run.warnings


def localize(
    G: Graph,
    H: Graph,
    config: LocalizeConfig | None = None,
    packing: list[SubdivisionEmbedding] | None = None,
    Z: Iterable[int] | None = None,
) -> Certificate:
    """Build a localized hitting-set certificate for H-subdivisions in G.

    ``packing`` and ``Z`` default to a maximum packing and the
    lexicographically first minimum hitting set.  A supplied packing must be
    maximum: dropping an inactive member of Y is only sound when no further
    disjoint subdivision exists.
    """
    config = config or LocalizeConfig()
    validate_pattern(H)
    t0 = time.perf_counter()
    run = _Run(G, H, config)
    m, n = H.m, H.n
    k = z = 0
    triple: HittingTriple | None = None
    try:
        if packing is None or Z is None:
            sets = minimal_witness_sets(G, H, max_nodes=config.max_search_nodes)
        if packing is None:
            chosen = max_packing_from_sets(sets)
            if chosen:
                packing = packing_embeddings(G, H, chosen, config.max_search_nodes)
            else:
                packing = []
        k = len(packing)
        if k == 0:
            stated, derived = locality_bound(0, m, n, 0)
            return Certificate(G, H, 0, 0, 0, [], [], [], stated, derived, [], [],
                               seconds=time.perf_counter() - t0)
        Z = min_hitting_set_from_sets(sets) if Z is None else sorted(set(Z))
        z = len(Z)
        C = (1 << z) * m * k
        triple = initial_triple(G, H, k, Z, packing, config.max_search_nodes)
        triple = run.loop(triple, z)
        status, message = "ok", ""
    except BudgetExceeded as exc:
        status, message = "budget_exceeded", str(exc)
        triple = getattr(run, "triple", triple)
    stated, derived = locality_bound(z, m, n, k)
    Z = list(Z or [])
    S = list(triple.S) if triple is not None else []
    X = sorted(triple.X) if triple is not None else []
    cert = Certificate(
        G, H, k, len(S), z, Z, S, X, stated, derived,
        run.trace, run.rounds, status, run.warnings, message, time.perf_counter() - t0,
    )
    if status == "ok":
        if not is_subdivision_free(G, H, X, config.max_search_nodes):
            raise InvariantError("final X does not hit every subdivision")
        if len(X) > derived:
            raise InvariantError(f"|X| = {len(X)} exceeds {derived}")
    return cert
