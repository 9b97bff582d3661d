"""Independent re-check of a localization certificate.

Deliberately imports nothing from the optimized search: embeddings are checked
structurally here and subdivision-freeness goes through the naive enumerator.
"""

from __future__ import annotations

from dataclasses import dataclass

from localep.graph import Graph
from localep.naive import naive_exists

CHECKS = (
    ("a", "embeddings are valid H-subdivisions"),
    ("b", "embeddings are pairwise vertex-disjoint"),
    ("c", "X lies inside the embeddings"),
    ("d", "G - X has no H-subdivision"),
    ("e", "|X| is within the derived bound"),
)


@dataclass
class CheckResult:
    tag: str
    label: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        state = "PASS" if self.ok else "FAIL"
        tail = f": {self.detail}" if self.detail else ""
        return f"{state} ({self.tag}) {self.label}{tail}"


@dataclass
class VerifyReport:
    results: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failed(self) -> list[str]:
        return [r.tag for r in self.results if not r.ok]

    def lines(self) -> list[str]:
        return [r.line() for r in self.results]


def _embedding_problem(G: Graph, H: Graph, emb: dict) -> str | None:
    """Why ``emb`` is not an H-subdivision of G, or None if it is one."""
    try:
        branch = {int(h): int(v) for h, v in emb["branch"].items()}
        paths = {}
        for key, p in emb["paths"].items():
            a, b = (int(t) for t in key.split("-"))
            paths[(min(a, b), max(a, b))] = (a, b, [int(v) for v in p])
    except (KeyError, ValueError, AttributeError, TypeError) as exc:
        return f"unreadable embedding ({exc})"
    if sorted(branch) != list(H.vertices):
        return "branch map does not cover the pattern's vertices"
    images = list(branch.values())
    if len(set(images)) != len(images) or not all(0 <= v < G.n for v in images):
        return "branch map is not injective into G"
    if set(paths) != set(H.edges):
        return "edge paths do not match the pattern's edges"
    used = set(images)
    for (u, v), (a, b, p) in sorted(paths.items()):
        if len(p) < 2 or p[0] != branch[a] or p[-1] != branch[b]:
            return f"path for {u}-{v} has wrong ends"
        if len(set(p)) != len(p):
            return f"path for {u}-{v} repeats a vertex"
        for s, t in zip(p, p[1:]):
            if not (0 <= s < G.n and 0 <= t < G.n) or not G.has_edge(s, t):
                return f"path for {u}-{v} uses a non-edge {s}-{t}"
        inner = set(p[1:-1])
        if inner & used:
            return f"path for {u}-{v} meets another path or a branch vertex"
        used |= inner
    return None


def _vertices(emb: dict) -> set[int]:
    out = {int(v) for v in emb["branch"].values()}
    for p in emb["paths"].values():
        out.update(int(v) for v in p)
    return out


def verify_certificate(G: Graph, H: Graph, cert: dict) -> VerifyReport:
    embs = cert.get("embeddings", [])
    X = [int(v) for v in cert.get("X", [])]
    results = []

    problems = []
    for i, emb in enumerate(embs):
        why = _embedding_problem(G, H, emb)
        if why:
            problems.append(f"embedding {i}: {why}")
    results.append(CheckResult("a", CHECKS[0][1], not problems, "; ".join(problems)))
    if problems:
        sets = []
    else:
        sets = [_vertices(e) for e in embs]

    clash = [
        f"{i}/{j}" for i in range(len(sets)) for j in range(i + 1, len(sets)) if sets[i] & sets[j]
    ]
    ok_b = not problems and not clash
    results.append(CheckResult("b", CHECKS[1][1], ok_b, ", ".join(clash) or ("" if ok_b else "see (a)")))

    union = set().union(*sets) if sets else set()
    outside = sorted(set(X) - union)
    ok_c = not problems and not outside
    results.append(CheckResult("c", CHECKS[2][1], ok_c, f"outside: {outside}" if outside else ""))

    bad = [v for v in X if not 0 <= v < G.n]
    if bad:
        results.append(CheckResult("d", CHECKS[3][1], False, f"unknown vertices {bad}"))
    else:
        alive = naive_exists(G, H, avoid=X)
        results.append(CheckResult("d", CHECKS[3][1], not alive, "a subdivision survives" if alive else ""))

    try:
        k, z = int(cert["k"]), int(cert["z"])
        claimed = int(cert["bound_derived"])
    except (KeyError, ValueError, TypeError) as exc:
        results.append(CheckResult("e", CHECKS[4][1], False, f"unreadable bound ({exc})"))
        return VerifyReport(results)
    bound = (1 << z) * H.m * k - k * (H.m - H.n)
    notes = []
    if claimed != bound:
        notes.append(f"claimed bound {claimed} but 2^z m k - k(m-n) = {bound}")
    if k != len(embs):
        notes.append(f"k = {k} but {len(embs)} embeddings")
    Z = [int(v) for v in cert.get("Z", [])]
    if len(Z) != z or not all(0 <= v < G.n for v in Z) or naive_exists(G, H, avoid=Z):
        notes.append("Z is not a hitting set of size z")
    if len(set(X)) > bound:
        notes.append(f"|X| = {len(set(X))} > {bound}")
    results.append(CheckResult("e", CHECKS[4][1], not notes, "; ".join(notes)))
    return VerifyReport(results)
