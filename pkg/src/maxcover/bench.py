"""Benchmark sweeps: sanitize growing prefixes against auto-selected patterns.

Each cell of the sweep takes a database prefix, mines it, draws restrictive
patterns of length 2..6 uniformly from the frequent ones (seeded; for a given
prefix the draw for n patterns is a prefix of the draw for more patterns, so
workloads nest), sanitizes, and records the five measures plus the core
sanitization time.  Fits of elapsed time against either axis summarize the
linear cost trend.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .metrics import evaluate
from .miner import FrequentItemsets, absolute_threshold, mine_frequent
from .sanitizer import sanitize
from .transactions import RestrictivePatterns, TransactionDatabase

__all__ = [
    "BenchRow",
    "FitLine",
    "linear_fit",
    "shuffled_candidates",
    "run_bench",
    "rows_to_csv",
]

MIN_PATTERN_LEN = 2
MAX_PATTERN_LEN = 6


@dataclass(frozen=True)
class BenchRow:
    size: int
    patterns: int
    sigma_abs: int
    hiding_failure: float
    misses_cost: float
    sanitization_rate: float
    artifactual_patterns: float
    dissimilarity: float
    removed_items: float
    sensitive_transactions: float
    elapsed_ms: float


@dataclass(frozen=True)
class FitLine:
    label: str
    slope: float
    intercept: float
    r_squared: float


def linear_fit(xs: Sequence[float], ys: Sequence[float]) -> Tuple[float, float, float]:
    """Least-squares line through the points; returns (slope, intercept, r^2)."""
    if len(xs) != len(ys) or len(xs) < 2:
        raise ValueError("need at least two points to fit a line")
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    residuals = y - (slope * x + intercept)
    total = float(np.sum((y - y.mean()) ** 2))
    if total == 0.0:
        return float(slope), float(intercept), 1.0
    return float(slope), float(intercept), 1.0 - float(np.sum(residuals ** 2)) / total


def _draw_seed(seed: int, size: int, draw: int) -> int:
    return (seed * 1_000_003 + size * 1_009 + draw) & 0x7FFFFFFF


def shuffled_candidates(frequent: FrequentItemsets, seed: int) -> List[frozenset]:
    """Length-2..6 frequent patterns in a seeded uniform order."""
    candidates = [p for p in frequent.patterns_sorted()
                  if MIN_PATTERN_LEN <= len(p) <= MAX_PATTERN_LEN]
    random.Random(seed).shuffle(candidates)
    return candidates


def _sensitive_count(db: TransactionDatabase, patterns: RestrictivePatterns) -> int:
    return sum(1 for t in db if any(p <= t.items for p in patterns))


def _mean(xs: Sequence[float]) -> float:
    return sum(xs) / len(xs)


def run_bench(db: TransactionDatabase, sizes: Sequence[int],
              pattern_counts: Sequence[int], *,
              sigma_rel: Optional[float] = None,
              sigma_abs: Optional[int] = None,
              seed: int = 0, repeats: int = 3,
              draws: int = 1) -> Tuple[List[BenchRow], List[FitLine], List[str]]:
    """Run the sweep grid; returns (rows, fit summaries, skip notes).

    ``repeats`` re-times each sanitization and keeps the fastest run;
    ``draws`` averages each cell over several independent pattern draws.
    Cells whose prefix lacks enough candidate patterns are skipped with a
    note instead of failing the whole sweep.
    """
    if (sigma_rel is None) == (sigma_abs is None):
        raise ValueError("exactly one of sigma_rel / sigma_abs is required")
    if repeats < 1 or draws < 1:
        raise ValueError("repeats and draws must be >= 1")
    rows: List[BenchRow] = []
    notes: List[str] = []
    for size in sizes:
        prefix = db.prefix(size)
        sigma = sigma_abs if sigma_abs is not None else absolute_threshold(sigma_rel, size)
        frequent = mine_frequent(prefix, sigma)
        pools = [shuffled_candidates(frequent, _draw_seed(seed, size, d))
                 for d in range(draws)]
        for count in pattern_counts:
            if len(pools[0]) < count:  # pools are shuffles of one candidate list
                notes.append(
                    f"cell size={size} patterns={count}: only "
                    f"{len(pools[0])} candidate patterns, skipped"
                )
                continue
            cells = []
            for pool in pools:
                patterns = RestrictivePatterns.from_iterable(pool[:count])
                result = sanitize(prefix, patterns)
                best_ms = result.core_ms
                for _ in range(repeats - 1):
                    best_ms = min(best_ms, sanitize(prefix, patterns).core_ms)
                report = evaluate(prefix, result.sanitized, patterns, sigma,
                                  log=result.log, frequent_original=frequent)
                cells.append((report, _sensitive_count(prefix, patterns), best_ms))
            rows.append(BenchRow(
                size=size,
                patterns=count,
                sigma_abs=sigma,
                hiding_failure=_mean([c[0].hiding_failure for c in cells]),
                misses_cost=_mean([c[0].misses_cost for c in cells]),
                sanitization_rate=_mean([c[0].sanitization_rate for c in cells]),
                artifactual_patterns=_mean([c[0].artifactual_patterns for c in cells]),
                dissimilarity=_mean([c[0].dissimilarity for c in cells]),
                removed_items=_mean([float(c[0].removed_items) for c in cells]),
                sensitive_transactions=_mean([float(c[1]) for c in cells]),
                elapsed_ms=_mean([c[2] for c in cells]),
            ))
    return rows, fit_lines(rows), notes


def fit_lines(rows: Sequence[BenchRow]) -> List[FitLine]:
    """Elapsed-vs-size and elapsed-vs-patterns fits for every sweep with 3+ points."""
    fits: List[FitLine] = []
    for count in sorted({r.patterns for r in rows}):
        group = [r for r in rows if r.patterns == count]
        if len({r.size for r in group}) >= 3:
            slope, intercept, r2 = linear_fit([r.size for r in group],
                                              [r.elapsed_ms for r in group])
            fits.append(FitLine(f"elapsed_ms ~ size @ patterns={count}",
                                slope, intercept, r2))
    for size in sorted({r.size for r in rows}):
        group = [r for r in rows if r.size == size]
        if len({r.patterns for r in group}) >= 3:
            slope, intercept, r2 = linear_fit([r.patterns for r in group],
                                              [r.elapsed_ms for r in group])
            fits.append(FitLine(f"elapsed_ms ~ patterns @ size={size}",
                                slope, intercept, r2))
    return fits


def _fmt(value: float) -> str:
    if value == int(value):
        return str(int(value))
    return format(value, ".6g")


def rows_to_csv(rows: Sequence[BenchRow], fits: Sequence[FitLine] = (), *,
                timing: bool = True) -> str:
    """Delimited sweep output; ``timing=False`` blanks the wall-clock fields
    so identical configurations produce byte-identical files."""
    header = ("size,patterns,sigma_abs,hiding_failure,misses_cost,"
              "sanitization_rate,artifactual_patterns,dissimilarity,"
              "removed_items,sensitive_transactions,elapsed_ms")
    out = [header]
    for r in rows:
        fields = [str(r.size), str(r.patterns), str(r.sigma_abs),
                  _fmt(r.hiding_failure), _fmt(r.misses_cost),
                  _fmt(r.sanitization_rate), _fmt(r.artifactual_patterns),
                  _fmt(r.dissimilarity), _fmt(r.removed_items),
                  _fmt(r.sensitive_transactions),
                  _fmt(r.elapsed_ms) if timing else ""]
        out.append(",".join(fields))
    if timing:
        for f in fits:
            out.append(f"# fit: {f.label} slope={f.slope:.6g} "
                       f"intercept={f.intercept:.6g} r2={f.r_squared:.6g}")
    return "\n".join(out) + "\n"
