"""Command line front end: mine, sanitize, evaluate, bench, gen."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import bench as bench_mod
from .dataio import (read_fimi, read_patterns, report_document, save_report,
                     dumps_report, write_fimi)
from .index import build_index, dump_tables
from .metrics import evaluate
from .miner import absolute_threshold, mine_frequent
from .sanitizer import sanitize
from .datagen import generate_baskets

__all__ = ["main", "parse_min_sup"]


def parse_min_sup(text: str):
    """Threshold syntax: a float in (0, 1] is relative ("0.006"); an integer
    with an ``abs`` suffix is an absolute count ("3abs")."""
    s = text.strip().lower()
    if s.endswith("abs"):
        try:
            value = int(s[:-3])
        except ValueError:
            raise ValueError(f"bad absolute threshold {text!r}") from None
        if value < 1:
            raise ValueError(f"absolute threshold must be >= 1, got {value}")
        return None, value
    try:
        rel = float(s)
    except ValueError:
        raise ValueError(f"bad threshold {text!r}; use e.g. 0.006 or 3abs") from None
    if not 0.0 < rel <= 1.0:
        raise ValueError(f"relative threshold must be in (0, 1], got {rel}")
    return rel, None


def _resolve_sigma(text: str, n_transactions: int):
    rel, fixed = parse_min_sup(text)
    if fixed is not None:
        return fixed, None
    return absolute_threshold(rel, n_transactions), rel


def _load_db(args, *, allow_empty=None):
    allow = args.allow_empty if allow_empty is None else allow_empty
    db = read_fimi(args.input, allow_empty=allow)
    if args.prefix is not None:
        db = db.prefix(args.prefix)
    return db


def _emit(text: str, out_path) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)


def cmd_mine(args) -> int:
    db = _load_db(args)
    sigma_abs, sigma_rel = _resolve_sigma(args.min_sup, len(db))
    t0 = time.perf_counter()
    frequent = mine_frequent(db, sigma_abs, sigma_rel)
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    body = "".join(line + "\n" for line in frequent.dump_lines())
    _emit(body, args.out)
    print(f"{len(frequent)} frequent patterns at sigma_abs={sigma_abs} "
          f"in {elapsed_ms:.1f} ms", file=sys.stderr)
    return 0


def cmd_sanitize(args) -> int:
    db = _load_db(args)
    patterns = read_patterns(args.patterns)
    result = sanitize(db, patterns)
    _emit(write_fimi(result.sanitized), args.out)
    log_path = args.log
    if log_path is None and args.out and not args.no_log:
        log_path = f"{args.out}.log.json"
    if log_path and not args.no_log:
        Path(log_path).write_text(json.dumps(result.log.to_dict(), indent=2) + "\n",
                                  encoding="ascii")
    if args.dump_index:
        ix = build_index(db, patterns)
        Path(args.dump_index).write_text(
            "".join(line + "\n" for line in dump_tables(ix)), encoding="ascii")
    marked = {tid for marks in result.log.victim_marks for tid in marks}
    print(f"removed {result.log.total_removed} items from {len(marked)} "
          f"transactions (core {result.core_ms:.1f} ms, index {result.index_ms:.1f} ms)",
          file=sys.stderr)
    return 0


def cmd_evaluate(args) -> int:
    original = _load_db(args)
    sanitized = read_fimi(args.sanitized, allow_empty=True)
    patterns = read_patterns(args.patterns)
    sigma_abs, sigma_rel = _resolve_sigma(args.min_sup, len(original))
    report = evaluate(original, sanitized, patterns, sigma_abs)
    doc = report_document(
        metrics=report.metric_fields(),
        counts={
            "transactions": len(original),
            "restrictive_patterns": len(patterns),
            "removed_items": report.removed_items,
        },
        timings_ms={"mine": round(report.mine_ms, 3)},
        params={
            "input": str(args.input),
            "sanitized": str(args.sanitized),
            "patterns": str(args.patterns),
            "sigma_abs": sigma_abs,
            "sigma_rel": sigma_rel,
        },
        annotations=report.annotations,
    )
    if args.report:
        save_report(doc, args.report)
        if not args.no_figures:
            from .plots import save_metrics_chart
            save_metrics_chart(doc, str(Path(args.report).with_suffix("")) + "_metrics.png")
    else:
        sys.stdout.write(dumps_report(doc))
    summary = ", ".join(f"{short}={doc['metrics'][key]:.4f}"
                        for key, short in (("hiding_failure", "hf"),
                                           ("misses_cost", "mc"),
                                           ("sanitization_rate", "sr"),
                                           ("artifactual_patterns", "ap"),
                                           ("dissimilarity", "dif")))
    print(summary, file=sys.stderr)
    return 0


def _int_list(text: str):
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"bad integer list {text!r}") from None
    if not values or any(v < 1 for v in values):
        raise ValueError(f"need positive integers, got {text!r}")
    return values


def cmd_bench(args) -> int:
    db = read_fimi(args.input, allow_empty=args.allow_empty)
    sizes = _int_list(args.sizes)
    counts = _int_list(args.num_patterns)
    sigma_rel, sigma_abs = parse_min_sup(args.min_sup)
    rows, fits, notes = bench_mod.run_bench(
        db, sizes, counts, sigma_rel=sigma_rel, sigma_abs=sigma_abs,
        seed=args.seed, repeats=args.repeats, draws=args.draws)
    text = bench_mod.rows_to_csv(rows, fits, timing=not args.no_timing)
    _emit(text, args.out)
    if args.out and not args.no_figures:
        from .plots import save_bench_charts
        save_bench_charts(rows, str(Path(args.out).with_suffix("")))
    for note in notes:
        print(note, file=sys.stderr)
    print(f"{len(rows)} bench rows", file=sys.stderr)
    return 0


def cmd_gen(args) -> int:
    db = generate_baskets(
        args.transactions,
        n_items=args.items,
        avg_transaction_size=args.avg_size,
        avg_itemset_size=args.avg_itemset,
        pool_size=args.pool,
        seed=args.seed,
    )
    _emit(write_fimi(db), args.out)
    print(f"generated {len(db)} transactions over {len(db.item_universe)} items",
          file=sys.stderr)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="maxcover",
        description="Hide restrictive itemsets in transactional data and measure the damage.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, prefix=True):
        p.add_argument("--input", required=True, help="FIMI database file")
        if prefix:
            p.add_argument("--prefix", type=int, default=None,
                           help="use only the first K transactions")
        p.add_argument("--allow-empty", action="store_true",
                       help="accept blank lines as empty transactions")

    p = sub.add_parser("mine", help="list frequent itemsets")
    common(p)
    p.add_argument("--min-sup", required=True,
                   help="support threshold: 0.006 (relative) or 3abs (absolute)")
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("sanitize", help="hide the given patterns by item deletion")
    common(p)
    p.add_argument("--patterns", required=True, help="restrictive pattern file")
    p.add_argument("--out", default=None, help="sanitized FIMI output (default stdout)")
    p.add_argument("--log", default=None,
                   help="removal log path (default <out>.log.json)")
    p.add_argument("--no-log", action="store_true", help="skip writing the log")
    p.add_argument("--dump-index", default=None,
                   help="write the lookup tables to this path")
    p.set_defaults(func=cmd_sanitize)

    p = sub.add_parser("evaluate", help="score a sanitized copy against the original")
    common(p)
    p.add_argument("--sanitized", required=True, help="sanitized FIMI file")
    p.add_argument("--patterns", required=True, help="restrictive pattern file")
    p.add_argument("--min-sup", required=True, help="support threshold")
    p.add_argument("--report", default=None,
                   help="write the JSON report here (default stdout)")
    p.add_argument("--no-figures", action="store_true",
                   help="skip chart rendering next to the report")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("bench", help="sweep prefixes and pattern counts")
    p.add_argument("--input", required=True, help="FIMI database file")
    p.add_argument("--allow-empty", action="store_true")
    p.add_argument("--min-sup", required=True, help="support threshold")
    p.add_argument("--sizes", required=True, help="prefix sizes, e.g. 1000,2000,4000")
    p.add_argument("--num-patterns", required=True,
                   help="restrictive pattern counts, e.g. 5,10,15")
    p.add_argument("--seed", type=int, default=0, help="pattern draw seed")
    p.add_argument("--repeats", type=int, default=3,
                   help="timing repetitions per cell (fastest wins)")
    p.add_argument("--draws", type=int, default=1,
                   help="independent pattern draws averaged per cell")
    p.add_argument("--out", default=None, help="CSV output (default stdout)")
    p.add_argument("--no-timing", action="store_true",
                   help="blank wall-clock fields for reproducible output")
    p.add_argument("--no-figures", action="store_true",
                   help="skip chart rendering next to the CSV")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="generate synthetic basket data")
    p.add_argument("--transactions", type=int, required=True)
    p.add_argument("--items", type=int, default=1000)
    p.add_argument("--avg-size", type=float, default=10.0)
    p.add_argument("--avg-itemset", type=float, default=4.0)
    p.add_argument("--pool", type=int, default=400,
                   help="number of source itemsets")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        # the downstream consumer (e.g. head) closed the pipe; not an error
        try:
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        except Exception:
            pass  # stdout may be a capture object with no real descriptor
        return 0
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
