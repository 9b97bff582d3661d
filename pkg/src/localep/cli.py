"""Command-line entry point: detect, pack, hit, localize, verify, gen, corpus."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from localep.errors import BudgetExceeded, LocalepError, MalformedInput
from localep.generators import generate
from localep.graph import Graph
from localep.localize import DEFAULT_MAX_STEPS, LocalizeConfig, localize
from localep.packing import max_packing, min_hitting_set
from localep.subdivision import DEFAULT_MAX_NODES, find_subdivision
from localep.verify import verify_certificate

log = logging.getLogger("localep")

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2

CSV_FIELDS = [
    "name", "graph", "pattern", "status", "n", "m_G", "k", "z", "X_size",
    "bound_derived", "steps", "seconds", "verify",
]


def _read_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc}") from None


def _read_graph(path: str) -> Graph:
    return Graph.from_dict(_read_json(path))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def cmd_detect(args) -> int:
    G, H = _read_graph(args.graph), _read_graph(args.pattern)
    emb = find_subdivision(G, H, avoid=args.avoid, must_include=args.must,
                           max_nodes=args.max_search_nodes)
    if emb is None:
        _emit("absent", args.out)
        return EXIT_NEGATIVE
    _emit(_dump(emb.to_dict()), args.out)
    return EXIT_OK


def cmd_pack(args) -> int:
    G, H = _read_graph(args.graph), _read_graph(args.pattern)
    embs = max_packing(G, H, max_nodes=args.max_search_nodes)
    _emit(_dump({"nu": len(embs), "embeddings": [e.to_dict() for e in embs]}), args.out)
    return EXIT_OK


def cmd_hit(args) -> int:
    G, H = _read_graph(args.graph), _read_graph(args.pattern)
    Z = min_hitting_set(G, H, max_nodes=args.max_search_nodes)
    _emit(_dump({"z": len(Z), "Z": Z}), args.out)
    return EXIT_OK


def _config(args) -> LocalizeConfig:
    return LocalizeConfig(max_steps=args.max_steps, max_search_nodes=args.max_search_nodes)


def cmd_localize(args) -> int:
    G, H = _read_graph(args.graph), _read_graph(args.pattern)
    cert = localize(G, H, _config(args))
    _emit(_dump(cert.to_dict()), args.out)
    if cert.status != "ok":
        print(f"localize stopped: {cert.message}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def cmd_verify(args) -> int:
    G, H = _read_graph(args.graph), _read_graph(args.pattern)
    cert = _read_json(args.certificate)
    report = verify_certificate(G, H, cert)
    _emit("\n".join(report.lines()), args.out)
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_gen(args) -> int:
    params = list(args.params)
    if args.kind == "gnp" and len(params) == 2:
        params.append(str(args.seed))
    _emit(generate(args.kind, params).to_json(), args.out)
    return EXIT_OK


def _generator_args(entry, key: str) -> tuple[str, list[str]]:
    raw = entry.get(key)
    if isinstance(raw, str):
        raw = raw.split()
    if not isinstance(raw, list) or not raw:
        raise MalformedInput(f"manifest entry needs a non-empty {key!r} generator description")
    return str(raw[0]), [str(p) for p in raw[1:]]


def read_manifest(path: str) -> list[dict]:
    """JSON lines; blank lines and lines starting with ``#`` are skipped."""
    entries = []
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None
    for no, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            entry = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"{path}:{no}: {exc}") from None
        if not isinstance(entry, dict):
            raise MalformedInput(f"{path}:{no}: expected an object")
        _generator_args(entry, "graph")
        _generator_args(entry, "pattern")
        entries.append(entry)
    return entries


def run_instance(entry: dict, index: int, out_dir: str, max_steps: int, max_nodes: int) -> dict:
    """localize, write the certificate, read it back and verify it."""
    gkind, gparams = _generator_args(entry, "graph")
    hkind, hparams = _generator_args(entry, "pattern")
    name = str(entry.get("name", f"{index:04d}"))
    row = {f: "" for f in CSV_FIELDS}
    row.update(name=name, graph=" ".join([gkind, *gparams]), pattern=" ".join([hkind, *hparams]))
    t0 = time.perf_counter()
    try:
        G = generate(gkind, gparams)
        H = generate(hkind, hparams)
        row.update(n=G.n, m_G=G.m)
        config = LocalizeConfig(
            max_steps=int(entry.get("max_steps", max_steps)),
            max_search_nodes=int(entry.get("max_search_nodes", max_nodes)),
        )
        cert = localize(G, H, config)
        row.update(status=cert.status, k=cert.k, z=cert.z, X_size=len(cert.X),
                   bound_derived=cert.bound_derived,
                   steps=sum(1 for s in cert.trace if s.kind != "init"))
        cert_path = Path(out_dir) / f"{name}.cert.json"
        cert_path.write_text(_dump(cert.to_dict()) + "\n", encoding="utf-8")
        if cert.status == "ok":
            report = verify_certificate(G, H, json.loads(cert_path.read_text(encoding="utf-8")))
            row["verify"] = "PASS" if report.ok else "FAIL:" + "".join(report.failed())
        else:
            row["verify"] = "SKIP"
    except BudgetExceeded:
        row.update(status="budget_exceeded", verify="SKIP")
    except LocalepError as exc:
        row.update(status=f"error: {exc}", verify="SKIP")
    row["seconds"] = f"{time.perf_counter() - t0:.3f}"
    return row


def run_corpus(manifest: str, out_dir: str, max_steps: int = DEFAULT_MAX_STEPS,
               max_nodes: int = DEFAULT_MAX_NODES, workers: int | None = None) -> list[dict]:
    entries = read_manifest(manifest)
    os.makedirs(out_dir, exist_ok=True)
    workers = workers or os.cpu_count() or 1
    jobs = [(e, i, out_dir, max_steps, max_nodes) for i, e in enumerate(entries)]
    if workers <= 1 or len(jobs) <= 1:
        rows = [run_instance(*job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run_instance, *zip(*jobs)))
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    (Path(out_dir) / "summary.csv").write_text(buf.getvalue(), encoding="utf-8")
    return rows


def cmd_corpus(args) -> int:
    rows = run_corpus(args.manifest, args.out_dir, args.max_steps, args.max_search_nodes, args.workers)
    sys.stdout.write((Path(args.out_dir) / "summary.csv").read_text(encoding="utf-8"))
    bad = [r for r in rows if r["status"] == "ok" and r["verify"] != "PASS"]
    return EXIT_NEGATIVE if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="localep", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    common.add_argument("--max-search-nodes", type=int, default=DEFAULT_MAX_NODES)
    common.add_argument("--seed", type=int, default=0, help="seed for gnp when not given inline")
    common.add_argument("--out", help="write output here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    def two_graphs(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("graph", help="host graph JSON")
        p.add_argument("pattern", help="pattern graph JSON")
        return p

    p = two_graphs("detect", "find one H-subdivision")
    p.add_argument("--avoid", type=int, nargs="*", default=[])
    p.add_argument("--must", type=int, nargs="*", default=[])
    p.set_defaults(func=cmd_detect)
    two_graphs("pack", "maximum packing of disjoint H-subdivisions").set_defaults(func=cmd_pack)
    two_graphs("hit", "minimum hitting set").set_defaults(func=cmd_hit)
    two_graphs("localize", "build a localized hitting-set certificate").set_defaults(func=cmd_localize)
    p = two_graphs("verify", "re-check a certificate with the naive enumerator")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("gen", parents=[common], help="generate a graph")
    p.add_argument("kind", help="fig1-tree | cycle | path | star | complete | theta | gnp | petersen | triangles")
    p.add_argument("params", nargs="*")
    p.set_defaults(func=cmd_gen)
    p = sub.add_parser("corpus", parents=[common], help="run localize+verify over a manifest")
    p.add_argument("manifest", help="JSON lines with graph and pattern generator descriptions")
    p.add_argument("out_dir")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except LocalepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
