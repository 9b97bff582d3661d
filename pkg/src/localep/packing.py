"""Exact packing and hitting numbers for H-subdivisions, plus closed-form bounds.

Both problems are solved over the family of *minimal witness sets*: vertex
sets ``W`` such that ``G[W]`` contains an H-subdivision but no proper subset
does.  A set of vertices meets every H-subdivision iff it meets every minimal
witness, and a maximum packing can always be chosen with each member spanning
a minimal witness, so packing and hitting reduce to set packing and set
transversal over bitmasks.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from localep.errors import BudgetExceeded, MalformedInput
from localep.graph import Graph
from localep.subdivision import (
    DEFAULT_MAX_NODES,
    SubdivisionEmbedding,
    _bits,
    _core,
    find_subdivision,
    is_subdivision_free,
    validate_pattern,
)

DEFAULT_MAX_SETS = 2_000_000


def _mask(vs: Iterable[int]) -> int:
    out = 0
    for v in vs:
        out |= 1 << v
    return out


def minimal_witness_sets(
    G: Graph, H: Graph, max_nodes: int = DEFAULT_MAX_NODES, max_sets: int = DEFAULT_MAX_SETS
) -> list[int]:
    """All inclusion-minimal vertex sets carrying an H-subdivision, as bitmasks.

    Grown level by level from subdivision-free sets: a minimal witness minus a
    suitable vertex is free (and connected when H is), so extending every free
    set by one vertex reaches every minimal witness.
    """
    validate_pattern(H)
    alive = (1 << G.n) - 1
    if H.min_degree() >= 2:
        alive = _core(G.masks, alive, 2)
    connected = H.is_connected()
    minimal: list[int] = []
    level = {1 << v for v in _bits(alive)}
    size = 1
    examined = 0
    while level:
        nxt: set[int] = set()
        for S in sorted(level):
            grow = 0
            if connected:
                for v in _bits(S):
                    grow |= G.masks[v]
                grow &= alive & ~S
            else:
                grow = alive & ~S
            for w in _bits(grow):
                T = S | (1 << w)
                if T in nxt:
                    continue
                examined += 1
                if examined > max_sets:
                    raise BudgetExceeded("witness sets", max_sets)
                if any(W & T == W for W in minimal):
                    continue
                if size + 1 >= H.n and find_subdivision(
                    G, H, must_include=(w,), within=_bits(T), max_nodes=max_nodes
                ) is not None:
                    minimal.append(T)
                else:
                    nxt.add(T)
        level = nxt
        size += 1
    minimal.sort(key=lambda W: (W.bit_count(), sorted(_bits(W))))
    return minimal


def _components(sets: list[int]) -> list[list[int]]:
    groups: list[tuple[int, list[int]]] = []
    for s in sets:
        merged_mask = s
        merged = [s]
        rest = []
        for m, members in groups:
            if m & merged_mask:
                merged_mask |= m
                merged.extend(members)
            else:
                rest.append((m, members))
        # a late merge can connect groups already passed over
        changed = True
        while changed:
            changed = False
            keep = []
            for m, members in rest:
                if m & merged_mask:
                    merged_mask |= m
                    merged.extend(members)
                    changed = True
                else:
                    keep.append((m, members))
            rest = keep
        groups = rest + [(merged_mask, merged)]
    return [sorted(members) for _, members in sorted(groups, key=lambda g: g[0] & -g[0])]


def _reduce(sets: Iterable[int]) -> tuple[int, ...]:
    uniq = sorted(set(sets), key=lambda s: (s.bit_count(), s))
    kept: list[int] = []
    for s in uniq:
        if not any(k & s == k for k in kept):
            kept.append(s)
    return tuple(sorted(kept))


@lru_cache(maxsize=None)
def _transversal(sets: tuple[int, ...]) -> int:
    """Minimum number of vertices meeting every set (``sets`` already reduced)."""
    if not sets:
        return 0
    if any(s == 0 for s in sets):
        return 1 << 30
    comps = _components(list(sets))
    if len(comps) > 1:
        return sum(_transversal(_reduce(c)) for c in comps)
    pivot = min(sets, key=lambda s: (s.bit_count(), s))
    best = 1 << 30
    removed = 0
    for u in _bits(pivot):
        bit = 1 << u
        rest = _reduce((s & ~removed) for s in sets if not s & bit)
        if 0 not in rest:
            best = min(best, 1 + _transversal(rest))
        removed |= bit
    return best


def min_hitting_set_from_sets(sets: list[int]) -> list[int]:
    """Lexicographically first minimum transversal of ``sets``."""
    cur = _reduce(sets)
    target = _transversal(cur)
    chosen: list[int] = []
    universe = 0
    for s in cur:
        universe |= s
    for v in _bits(universe):
        if not cur:
            break
        bit = 1 << v
        with_v = _reduce(s for s in cur if not s & bit)
        if 1 + _transversal(with_v) == target:
            chosen.append(v)
            cur = with_v
            target -= 1
        else:
            cur = _reduce(s & ~bit for s in cur)
    assert not cur and target == 0
    _transversal.cache_clear()
    return chosen


def min_hitting_set(G: Graph, H: Graph, max_nodes: int = DEFAULT_MAX_NODES) -> list[int]:
    """Minimum vertex set whose deletion leaves no H-subdivision; lexicographic tie-break."""
    sets = minimal_witness_sets(G, H, max_nodes=max_nodes)
    Z = min_hitting_set_from_sets(sets)
    if not is_subdivision_free(G, H, Z, max_nodes=max_nodes):
        raise AssertionError("transversal of minimal witnesses failed to hit a subdivision")
    return Z


def max_packing_from_sets(sets: list[int], cap: int | None = None) -> list[int]:
    """A maximum family of pairwise disjoint sets (deterministic choice)."""
    memo: dict[int, tuple[int, ...]] = {}

    def solve(avail: int) -> tuple[int, ...]:
        if avail in memo:
            return memo[avail]
        inside = [s for s in sets if s & avail == s]
        if not inside:
            memo[avail] = ()
            return ()
        covered = 0
        for s in inside:
            covered |= s
        comps = _components(inside)
        if len(comps) > 1:
            out: tuple[int, ...] = ()
            for c in comps:
                cm = 0
                for s in c:
                    cm |= s
                out += solve(cm)
            memo[avail] = tuple(sorted(out))
            return memo[avail]
        v = (covered & -covered).bit_length() - 1
        best = solve(covered & ~(1 << v))
        bound = covered.bit_count() // min(s.bit_count() for s in inside)
        for s in inside:
            if len(best) >= bound:
                break
            if s >> v & 1:
                cand = (s,) + solve(covered & ~s)
                if len(cand) > len(best):
                    best = tuple(sorted(cand))
        memo[avail] = best
        return best

    full = 0
    for s in sets:
        full |= s
    result = list(solve(full))
    if cap is not None:
        result = result[: cap + 1]
    return result


def max_packing(
    G: Graph, H: Graph, cap: int | None = None, max_nodes: int = DEFAULT_MAX_NODES
) -> list[SubdivisionEmbedding]:
    """Maximum number of pairwise vertex-disjoint H-subdivisions (``cap + 1`` at most)."""
    sets = minimal_witness_sets(G, H, max_nodes=max_nodes)
    return packing_embeddings(G, H, max_packing_from_sets(sets, cap), max_nodes)


def packing_embeddings(
    G: Graph, H: Graph, chosen: list[int], max_nodes: int = DEFAULT_MAX_NODES
) -> list[SubdivisionEmbedding]:
    out = []
    for W in sorted(chosen, key=lambda s: s & -s):
        emb = find_subdivision(G, H, within=_bits(W), max_nodes=max_nodes)
        assert emb is not None
        out.append(emb)
    return out


def ep_bound_forest(t: int, t_prime: int, k: int) -> int:
    """Hitting-set size ``t*k - t'`` for forest minors (t vertices, largest component t')."""
    if not (t >= t_prime >= 1 and k >= 1):
        raise MalformedInput("need t >= t' >= 1 and k >= 1")
    return t * k - t_prime


def locality_bound(f_k: int, m: int, n: int, k: int) -> tuple[int, int]:
    """``(2^f m k + k(m-n), 2^f m k - k(m-n))``: the headline bound and the one the argument yields."""
    if m < 1 or k < 0 or f_k < 0:
        raise MalformedInput("need m >= 1, k >= 0, f_k >= 0")
    base = (1 << f_k) * m * k
    return base + k * (m - n), base - k * (m - n)


def subcubic_tree_reference(n: int, k: int) -> int:
    """Reference value ``2^(nk) (n-2) k`` quoted for subcubic trees; reported only."""
    return (1 << (n * k)) * (n - 2) * k
