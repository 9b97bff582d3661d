"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v``; the summary lines are printed
even without ``-s``.  Every check recomputes its verdict with the brute-force
oracles in ``oracles.py`` or the naive enumerator rather than trusting flags
recorded by the code under test.
"""

from __future__ import annotations

import json
import random
import time

import pytest

from corpus import manifest_entries
from localep.cli import main
from localep.generators import counterexample_tree, depths, generate, gnp
from localep.graph import Separation
from localep.menger import disjoint_paths_or_separation, maximal_separation
from localep.naive import naive_exists
from localep.packing import ep_bound_forest, locality_bound, max_packing, min_hitting_set
from localep.subdivision import find_subdivision
from oracles import (
    PATTERNS,
    branch_set,
    brute_disjoint_paths,
    brute_hitting_number,
    brute_packing_number,
    brute_unit_separation_sides,
    free_after,
    is_valid_separation,
    partition_paths,
)

PER_INSTANCE_SECONDS = 10.0
CORPUS_SECONDS = 30 * 60


def report(capsys, number: int, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture(scope="module")
def corpus_runs(tmp_path_factory):
    """localize then verify every corpus instance through the command-line entry point."""
    root = tmp_path_factory.mktemp("corpus")
    runs = []
    t_all = time.perf_counter()
    for i, entry in enumerate(manifest_entries()):
        G = generate(entry["graph"][0], entry["graph"][1:])
        H = generate(entry["pattern"][0], entry["pattern"][1:])
        gpath, hpath = root / f"{i}.g.json", root / f"{i}.h.json"
        cpath, rpath = root / f"{i}.cert.json", root / f"{i}.report.txt"
        gpath.write_text(G.to_json())
        hpath.write_text(H.to_json())
        t0 = time.perf_counter()
        code = main(["localize", str(gpath), str(hpath), "--out", str(cpath)])
        seconds = time.perf_counter() - t0
        cert = json.loads(cpath.read_text())
        vcode = None
        lines: list[str] = []
        if code == 0:
            vcode = main(["verify", str(gpath), str(hpath), str(cpath), "--out", str(rpath)])
            lines = rpath.read_text().splitlines()
        runs.append(
            {"name": entry["name"], "G": G, "H": H, "code": code, "cert": cert,
             "verify_code": vcode, "lines": lines, "seconds": seconds}
        )
    return {"runs": runs, "seconds": time.perf_counter() - t_all}


def completed(corpus_runs):
    return [r for r in corpus_runs["runs"] if r["code"] == 0 and r["cert"]["status"] == "ok"]


def test_criterion_1_end_to_end_certificates(corpus_runs, capsys):
    runs = corpus_runs["runs"]
    done = completed(corpus_runs)
    gnp_graphs = {r["name"].rsplit("_", 1)[0] for r in runs if r["name"].startswith("gnp")}
    bad = [r["name"] for r in done if r["verify_code"] != 0 or len(r["lines"]) != 5
           or not all(l.startswith("PASS") for l in r["lines"])]
    slow = [r["name"] for r in runs if r["seconds"] >= PER_INSTANCE_SECONDS]
    rate = len(done) / len(runs)
    ok = not bad and rate >= 0.95 and not slow and corpus_runs["seconds"] < CORPUS_SECONDS \
        and len(gnp_graphs) >= 200
    worst = max(r["seconds"] for r in runs)
    report(capsys, 1, ok,
           f"{len(runs)} instances ({len(gnp_graphs)} gnp graphs x 4 patterns + named), "
           f"{rate:.1%} complete, {len(bad)} verify failures, slowest {worst:.2f}s, "
           f"total {corpus_runs['seconds']:.0f}s")
    assert ok, (bad[:5], slow[:5])


def bound_tuples():
    rng = random.Random(5)
    out = [(3, 3, 3, 1), (0, 1, 2, 1), (4, 5, 4, 2), (200, 7, 5, 3)]
    while len(out) < 24:
        out.append((rng.randint(0, 40), rng.randint(1, 12), rng.randint(1, 12), rng.randint(0, 9)))
    return out


def test_criterion_2_derived_bound(corpus_runs, capsys):
    over, wrong_z = [], []
    for r in completed(corpus_runs):
        cert, H = r["cert"], r["H"]
        k, z = cert["k"], cert["z"]
        if len(set(cert["X"])) > (2**z) * H.m * k - k * (H.m - H.n):
            over.append(r["name"])
        if z != brute_hitting_number(r["G"], H):
            wrong_z.append(r["name"])
    formula_bad = []
    for f, m, n, k in bound_tuples():
        if locality_bound(f, m, n, k) != (2**f * m * k + k * (m - n), 2**f * m * k - k * (m - n)):
            formula_bad.append((f, m, n, k))
    forest = [(t, tp, k) for t in range(1, 7) for tp in range(1, t + 1) for k in (1, 2, 5)]
    forest_bad = [x for x in forest if ep_bound_forest(*x) != x[0] * x[2] - x[1]]
    ok = not over and not wrong_z and not formula_bad and not forest_bad
    report(capsys, 2, ok,
           f"{len(over)} bound violations, {len(wrong_z)} z mismatches vs brute force; "
           f"{len(bound_tuples())} locality tuples and {len(forest)} forest tuples exact")
    assert ok, (over[:5], wrong_z[:5], formula_bad, forest_bad)


def step_violations(r):
    cert, G, H = r["cert"], r["G"], r["H"]
    k, z, m, n = cert["k"], cert["z"], H.m, H.n
    out = []
    branch0 = None
    for i, step in enumerate(cert["trace"]):
        X, Y, S = set(step["X"]), list(step["Y"]), step["S"]
        parts = partition_paths(S, X)
        vs = {v for emb in S for p in emb["paths"].values() for v in p}
        b = branch_set(S)
        branch0 = b if branch0 is None else branch0
        if len(parts) != len(X) + k * (m - n):
            out.append((i, "identity"))
        exp = z - len(Y)
        if exp < 0 or len(parts) > (2**exp) * m * k:
            out.append((i, "acceptable"))
        if b != branch0:
            out.append((i, "branch"))
        if not (X <= vs and b <= X and not set(Y) & vs and Y == sorted(set(Y))):
            out.append((i, "triple shape"))
        if not free_after(G, H, X | set(Y)):
            out.append((i, "hitting"))
    return out


def test_criterion_3_step_invariants(corpus_runs, capsys):
    steps = 0
    bad = []
    for r in completed(corpus_runs):
        steps += len(r["cert"]["trace"])
        bad += [(r["name"],) + v for v in step_violations(r)]
    report(capsys, 3, not bad, f"{steps} steps re-checked independently, {len(bad)} violations")
    assert not bad, bad[:10]


def test_criterion_4_score_monotonicity(corpus_runs, capsys):
    rounds = 0
    bad, score_mismatch = [], []
    runs = corpus_runs["runs"]
    unfinished = [r["name"] for r in runs if r["cert"]["status"] != "ok"]
    for r in completed(corpus_runs):
        cert = r["cert"]
        C = (2 ** cert["z"]) * r["H"].m * cert["k"]
        for step in cert["trace"]:
            if int(step["score_after"]) != sum(C ** (i + 1) * v for i, v in enumerate(step["N"])):
                score_mismatch.append(r["name"])
        for rnd in cert["rounds"]:
            rounds += 1
            if int(rnd["C"]) != C or int(rnd["score_start"]) - int(rnd["score_end"]) < C:
                bad.append(r["name"])
    ok = not bad and not score_mismatch and not unfinished
    report(capsys, 4, ok,
           f"{rounds} rounds, {len(bad)} with decrease < C, {len(score_mismatch)} score mismatches, "
           f"{len(unfinished)} runs over the step budget")
    assert ok, (bad[:5], score_mismatch[:5], unfinished[:5])


def test_criterion_5_menger_equivalence(capsys):
    rng = random.Random(2024)
    disagreements = []
    unit_checks = 0
    for seed in range(500):
        n = rng.randint(2, 10)
        g = gnp(n, rng.choice([0.2, 0.35, 0.5]), seed)
        y = rng.randrange(n)
        rest = [v for v in range(n) if v != y]
        A = set(rng.sample(rest, rng.randint(1, min(4, len(rest)))))
        best = brute_disjoint_paths(g, y, A, 3)
        for j in (1, 2, 3):
            res = disjoint_paths_or_separation(g, y, A, j)
            if isinstance(res, Separation):
                if best >= j or len(res.cut) >= j or not is_valid_separation(
                    g, set(res.M), set(res.N), y, A, set(g.vertices)
                ):
                    disagreements.append((seed, j))
            else:
                distinct = len({frozenset(p[1:]) for p in res}) == j
                body = [v for p in res for v in p[1:]]
                if best < j or len(res) != j or len(body) != len(set(body)) or not distinct:
                    disagreements.append((seed, j))
        if best == 1:
            unit_checks += 1
            sep, x = maximal_separation(g, y, A)
            if sep.cut != {x} or not is_valid_separation(g, set(sep.M), set(sep.N), y, A, set(g.vertices)):
                disagreements.append((seed, "maximal"))
            if any(not M <= sep.M for M in brute_unit_separation_sides(g, y, A)):
                disagreements.append((seed, "dominance"))
    report(capsys, 5, not disagreements,
           f"500 instances x j in {{1,2,3}}, {unit_checks} maximal-cut checks, "
           f"{len(disagreements)} disagreements")
    assert not disagreements, disagreements[:10]


def test_criterion_6_detector_equivalence(capsys):
    rng = random.Random(77)
    checks = 0
    disagreements = []
    for seed in range(300):
        g = gnp(rng.randint(1, 9), rng.choice([0.2, 0.35, 0.5]), seed)
        for name in ("C3", "P4", "K13"):
            H = PATTERNS[name]
            for _ in range(3):
                avoid = set(rng.sample(range(g.n), rng.randint(0, min(3, g.n))))
                checks += 1
                if (find_subdivision(g, H, avoid=avoid) is not None) != naive_exists(g, H, avoid=avoid):
                    disagreements.append((seed, name, sorted(avoid)))
    report(capsys, 6, not disagreements, f"{checks} (graph, pattern, avoid) checks, {len(disagreements)} disagreements")
    assert not disagreements, disagreements[:10]


def test_criterion_7_packing_hitting_exact(corpus_runs, capsys):
    bad = []
    count = 0
    for r in corpus_runs["runs"]:
        G, H = r["G"], r["H"]
        if G.n > 10:
            continue
        count += 1
        nu = len(max_packing(G, H))
        z = len(min_hitting_set(G, H))
        if nu != brute_packing_number(G, H) or z != brute_hitting_number(G, H) or z < nu:
            bad.append(r["name"])
    report(capsys, 7, not bad and count > 0, f"{count} instances with n <= 10, {len(bad)} mismatches")
    assert not bad and count > 0, bad[:10]


def test_criterion_8_tree_generator(capsys):
    t = counterexample_tree()
    d = depths(t, 0)
    layer = {k: [v for v in t.vertices if d.get(v) == k] for k in range(4)}
    ok = (
        t.n == 43 and t.m == 42 and t.degree(0) == 6
        and len(layer[1]) == 6 and all(t.degree(v) == 3 for v in layer[1])
        and len(layer[2]) == 12 and all(t.degree(v) == 3 for v in layer[2])
        and len(layer[3]) == 24 and all(t.degree(v) == 1 for v in layer[3])
        and len(d) == 43
    )
    report(capsys, 8, ok, f"{t.n} vertices, {t.m} edges, layers {[len(layer[k]) for k in range(4)]}")
    assert ok
