"""``census``: command-line front end.

Every FILE argument accepts ``-`` for stdin. JSON goes to stdout,
diagnostics to stderr. Exit codes: 0 success, 1 pattern absent (detect,
detect-cc, clique), 2 usage or input error, 3 internal inconsistency.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from importlib import resources
from math import comb
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .catalog import NAMES, calibrate_catalog, get_catalog, oracle_count, render_frozen_module
from .core import (
    Tournament,
    format_edges,
    format_tournament,
    parse_tournament,
    parse_undirected,
    random_tournament,
    read_text,
    rotational_tournament,
    transitive_tournament,
)
from .count import count_3, count_4, count_4_rhs, count_5, quasirandomness_report, table1_rhs
from .detect import detect, detect_D, detect_X4, verify_witness
from .errors import CalibrationAmbiguous, CensusError, InternalInconsistency
from .pairstats import compute_pair_stats, edge_stats, sum_binom
from .reductions import clique_detect_via_count, clique_pattern, color_coding_detect

EXIT_OK, EXIT_ABSENT, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2, 3
PATTERNS4 = ("T4", "X4", "D", "DT")
BENCH_PHASES = ("count_4", "count_5", "detect_D", "detect_X4")


class UsageError(Exception):
    pass


@dataclass
class CensusReport:
    input: str
    n: int
    counts: dict = field(default_factory=dict)
    timings_ms: dict = field(default_factory=dict)
    version: str = __version__
    seed: Optional[int] = None

    def check(self) -> None:
        for k, cv in self.counts.items():
            if sum(cv.values()) != comb(self.n, int(k)):
                raise InternalInconsistency(f"k={k} counts do not sum to C({self.n},{k})")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _load(path: str) -> Tournament:
    return parse_tournament(read_text(path))


def _ms(t0: float) -> float:
    return round((time.perf_counter() - t0) * 1000, 3)


# ---------------------------------------------------------------------------
# subcommands


def cmd_detect(args) -> int:
    g = _load(args.file)
    w = detect(g, args.pattern)
    out = {"pattern": args.pattern, "found": w is not None}
    if args.witness and w is not None:
        out["witness"] = list(w.vertices)
    if args.paranoid:
        if g.n > 256:
            raise UsageError("--paranoid brute force is limited to n <= 256")
        expected = g.n >= 4 and oracle_count(g, 4)[args.pattern] > 0
        if expected != (w is not None) or (w is not None and not verify_witness(g, w)):
            raise InternalInconsistency(f"{args.pattern} detection disagrees with brute force")
    _emit(out)
    return EXIT_OK if w is not None else EXIT_ABSENT


def cmd_detect_cc(args) -> int:
    t = _load(args.pattern_file)
    g = _load(args.file)
    w = color_coding_detect(g, t, delta=args.delta, seed=args.seed, trials=args.trials)
    out = {"pattern": get_catalog().classify(t), "found": w is not None}
    if w is not None:
        out["witness"] = list(w.vertices)
    _emit(out)
    return EXIT_OK if w is not None else EXIT_ABSENT


def _engine_count(g: Tournament, k: int, threads: int, timings: dict) -> dict:
    if k == 3:
        t0 = time.perf_counter()
        cv = count_3(g)
        timings["solve"] = _ms(t0)
        return cv.as_dict()
    t0 = time.perf_counter()
    stats = compute_pair_stats(g)
    timings["pair_stats"] = _ms(t0)
    t0 = time.perf_counter()
    if k == 4:
        count_4_rhs(g, stats)
    else:
        table1_rhs(g, stats)
    timings["rhs"] = _ms(t0)
    t0 = time.perf_counter()
    cv = count_4(g, stats) if k == 4 else count_5(g, workers=threads, stats=stats)
    timings["solve"] = _ms(t0)
    return cv.as_dict()


def cmd_count(args) -> int:
    g = _load(args.file)
    k = args.k
    if g.n < k:
        raise UsageError(f"counting {k}-vertex patterns needs n >= {k}, got {g.n}")
    timings: dict = {}
    if args.oracle:
        t0 = time.perf_counter()
        counts = oracle_count(g, k).as_dict()
        timings["oracle"] = _ms(t0)
    else:
        counts = _engine_count(g, k, args.threads, timings)
    if args.verify:
        expected = oracle_count(g, k).as_dict()
        diff = {name: [counts[name], expected[name]] for name in NAMES[k] if counts[name] != expected[name]}
        if diff:
            print(f"census: engine and oracle disagree: {json.dumps(diff)}", file=sys.stderr)
            _emit(counts)
            return EXIT_INCONSISTENT
    if args.report:
        rep = CensusReport(args.file, g.n, {str(k): counts}, timings)
        rep.check()
        out = asdict(rep)
        if k >= 4:
            t4, expected_t4 = quasirandomness_report(g)
            out["quasirandomness"] = {"t4": t4, "expected": str(expected_t4)}
        _emit(out)
    else:
        _emit(counts)
    return EXIT_OK


def cmd_stats(args) -> int:
    g = _load(args.file)
    es = edge_stats(g)
    out = {
        "n": g.n,
        "edges": int(es.dplus.size),
        "sum_dplus": sum_binom([(es.dplus, 1)]),
        "sum_dminus": sum_binom([(es.dminus, 1)]),
        "sum_puv": sum_binom([(es.puv, 1)]),
        "sum_pvu": sum_binom([(es.pvu, 1)]),
    }
    if g.n >= 4:
        out["k4_rhs"] = list(count_4_rhs(g))
    if g.n >= 5:
        out["table1_rhs"] = table1_rhs(g)
    _emit(out)
    return EXIT_OK


def cmd_calibrate(args) -> int:
    cat = calibrate_catalog(instances=args.instances, n=args.n, seed=args.seed)
    doc = [cat[name].to_json() for k in (3, 4, 5) for name in NAMES[k]]
    if args.emit:
        Path(args.emit).write_text(json.dumps(doc, indent=2) + "\n")
    if args.emit_module:
        Path(args.emit_module).write_text(render_frozen_module(cat))
    _emit(doc)
    if cat.codes() != get_catalog().codes():
        print("census: calibration differs from the frozen catalog", file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_clique(args) -> int:
    gu = parse_undirected(read_text(args.file))
    try:
        name, sig = clique_pattern(args.m)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    found = clique_detect_via_count(gu, args.m, get_catalog()[name].rep, sig, seed=args.seed, delta=args.delta)
    _emit({"m": args.m, "pattern": name, "signature": list(sig), "found": found})
    return EXIT_OK if found else EXIT_ABSENT


def cmd_gen(args) -> int:
    if args.kind == "random":
        g = random_tournament(args.n, args.seed)
    elif args.kind == "transitive":
        g = transitive_tournament(args.n)
    else:
        if not args.jumps:
            raise UsageError("--kind rotational needs --jumps")
        g = rotational_tournament(args.n, args.jumps)
    sys.stdout.write(format_edges(g) if args.format == "edges" else format_tournament(g))
    return EXIT_OK


def bench_rows(sizes: Sequence[int], seed: int, phases: Sequence[str] = BENCH_PHASES, threads: int = 1):
    """``(n, phase, millis)`` for each size and phase, on ``random_tournament(n, seed)``."""
    runners = {
        "count_4": count_4,
        "count_5": lambda g: count_5(g, workers=threads),
        "detect_D": detect_D,
        "detect_X4": detect_X4,
    }
    rows = []
    for n in sizes:
        g = random_tournament(n, seed)
        for phase in phases:
            t0 = time.perf_counter()
            runners[phase](g)
            rows.append((n, phase, _ms(t0)))
    return rows


def cmd_bench(args) -> int:
    if list(args.sizes) != sorted(args.sizes):
        raise UsageError("--sizes must be ascending")
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["n", "phase", "millis"])
    for row in bench_rows(args.sizes, args.seed, args.phases, args.threads):
        w.writerow(row)
    return EXIT_OK


def _corpus_files(paths: Sequence[str]) -> list[tuple[str, str]]:
    if not paths:
        root = resources.files("tournament_census") / "corpus"
        return sorted((f"corpus/{p.name}", p.read_text()) for p in root.iterdir() if p.name.endswith(".txt"))
    out = []
    for p in paths:
        path = Path(p)
        files = sorted(path.glob("*.txt")) if path.is_dir() else [path]
        out.extend((str(f), f.read_text()) for f in files)
    return out


def verify_tournament(g: Tournament) -> list[str]:
    """Engine-versus-oracle checks for every k and every detector; returns failure messages."""
    failures = []
    engines = {3: count_3, 4: count_4, 5: count_5}
    for k in (3, 4, 5):
        if g.n < k or (k == 5 and g.n > 64) or (k == 4 and g.n > 256):
            continue
        got = engines[k](g).as_dict()
        want = oracle_count(g, k).as_dict()
        if got != want:
            failures.append(f"k={k}: engine {got} != oracle {want}")
    if g.n <= 256:
        want4 = oracle_count(g, 4).as_dict() if g.n >= 4 else dict.fromkeys(PATTERNS4, 0)
        for p in PATTERNS4:
            w = detect(g, p)
            if (w is not None) != (want4[p] > 0):
                failures.append(f"detect {p}: got {w is not None}, oracle count {want4[p]}")
            elif w is not None and not verify_witness(g, w):
                failures.append(f"detect {p}: witness {list(w.vertices)} is not a copy")
    return failures


def cmd_verify(args) -> int:
    results = []
    for label, text in _corpus_files(args.paths):
        g = parse_tournament(text)
        failures = verify_tournament(g)
        results.append({"file": label, "n": g.n, "ok": not failures, "failures": failures})
    ok = all(r["ok"] for r in results)
    _emit({"ok": ok, "files": results})
    return EXIT_OK if ok else EXIT_INCONSISTENT


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="census",
        description="Detect and count small sub-tournaments.",
        epilog="exit codes: 0 ok / found, 1 absent, 2 usage or input error, 3 internal inconsistency",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="detect a four-vertex pattern in O(n^2)")
    p.add_argument("--pattern", required=True, choices=PATTERNS4)
    p.add_argument("--witness", action="store_true", help="include the witness vertices")
    p.add_argument("--paranoid", action="store_true", help="cross-check against brute force (n <= 256)")
    p.add_argument("file", help="tournament file or - for stdin")
    p.set_defaults(fn=cmd_detect)

    p = sub.add_parser("detect-cc", help="randomized colour-coding detection of a 3..5-vertex pattern")
    p.add_argument("--pattern-file", required=True, help="pattern tournament file")
    p.add_argument("--delta", type=float, default=1e-3, help="failure probability (default: 1e-3)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=None, help="override the trial count")
    p.add_argument("file")
    p.set_defaults(fn=cmd_detect_cc)

    p = sub.add_parser("count", help="exact census of all k-vertex patterns")
    p.add_argument("--k", type=int, required=True, choices=(3, 4, 5))
    p.add_argument("--oracle", action="store_true", help="brute-force enumeration instead of the engine")
    p.add_argument("--verify", action="store_true", help="also run the oracle and diff (exit 3 on mismatch)")
    p.add_argument("--report", action="store_true", help="emit a full report with phase timings")
    p.add_argument("--threads", type=int, default=1, help="worker threads for per-vertex work")
    p.add_argument("file")
    p.set_defaults(fn=cmd_count)

    p = sub.add_parser("stats", help="aggregate pair statistics and edge sums")
    p.add_argument("file")
    p.set_defaults(fn=cmd_stats)

    p = sub.add_parser("calibrate", help="re-derive the pattern catalog")
    p.add_argument("--emit", metavar="PATH", help="write the catalog JSON here")
    p.add_argument("--emit-module", metavar="PATH", help="write a frozen-codes Python module here")
    p.add_argument("--instances", type=int, default=20)
    p.add_argument("--n", type=int, default=9)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_calibrate)

    p = sub.add_parser("clique", help="K_m detection in an undirected graph via tournament counting")
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delta", type=float, default=1e-3)
    p.add_argument("file", help="symmetric 0/1 matrix file")
    p.set_defaults(fn=cmd_clique)

    p = sub.add_parser("gen", help="generate a tournament")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kind", choices=("random", "transitive", "rotational"), default="random")
    p.add_argument("--jumps", type=int, nargs="*", help="rotational jumps: i -> i + j mod n")
    p.add_argument("--format", choices=("matrix", "edges"), default="matrix")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("bench", help="timing table as CSV (n,phase,millis)")
    p.add_argument("--sizes", type=int, nargs="*", default=[])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--phases", nargs="+", choices=BENCH_PHASES, default=list(BENCH_PHASES))
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("verify", help="engine-versus-oracle diff on a corpus")
    p.add_argument("paths", nargs="*", help="files or directories (default: bundled corpus)")
    p.set_defaults(fn=cmd_verify)
    return parser


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (InternalInconsistency, CalibrationAmbiguous) as exc:
        print(f"census: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (UsageError, CensusError, ValueError, OSError) as exc:
        print(f"census: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
