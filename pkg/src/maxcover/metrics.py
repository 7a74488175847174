"""Privacy and utility measures comparing a database with its sanitized copy.

Five measures, each a fraction in [0, 1] with empty denominators defined as 0:

* hiding failure: restrictive patterns still frequent afterwards / frequent before,
* misses cost: non-restrictive frequent patterns lost by sanitization,
* sanitization rate: items deleted / total support of the restrictive patterns,
* artifactual patterns: frequent patterns afterwards that were not frequent before
  (always 0 for deletion-only sanitization),
* dissimilarity: total item occurrences lost, relative to the original.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Optional

from .miner import FrequentItemsets, mine_frequent
from .sanitizer import SanitizationLog
from .transactions import RestrictivePatterns, TransactionDatabase, support_count

__all__ = [
    "MetricsReport",
    "item_frequencies",
    "hiding_failure",
    "misses_cost",
    "artifactual_patterns",
    "sanitization_rate",
    "dissimilarity",
    "evaluate",
]

Miner = Callable[[TransactionDatabase, int], FrequentItemsets]


def item_frequencies(db: TransactionDatabase) -> Counter:
    """Per-item occurrence counts (each transaction counts an item once)."""
    freq = Counter()
    for t in db:
        freq.update(t.items)
    return freq


def hiding_failure(original: TransactionDatabase, sanitized: TransactionDatabase,
                   patterns: RestrictivePatterns, sigma_abs: int) -> float:
    """Fraction of the initially frequent restrictive patterns still frequent."""
    before = sum(1 for p in patterns if support_count(original, p) >= sigma_abs)
    if before == 0:
        return 0.0
    after = sum(1 for p in patterns if support_count(sanitized, p) >= sigma_abs)
    return after / before


def _mined(db: TransactionDatabase, sigma_abs: int, mine: Miner,
           precomputed: Optional[FrequentItemsets]) -> FrequentItemsets:
    if precomputed is not None:
        if precomputed.sigma_abs != sigma_abs:
            raise ValueError(
                f"precomputed patterns mined at {precomputed.sigma_abs}, need {sigma_abs}"
            )
        return precomputed
    return mine(db, sigma_abs)


def misses_cost(original: TransactionDatabase, sanitized: TransactionDatabase,
                patterns: RestrictivePatterns, sigma_abs: int, *,
                mine: Miner = mine_frequent,
                frequent_original: Optional[FrequentItemsets] = None,
                frequent_sanitized: Optional[FrequentItemsets] = None) -> float:
    """Fraction of non-restrictive frequent patterns that sanitization lost."""
    restrictive = set(patterns)
    before = {p for p in _mined(original, sigma_abs, mine, frequent_original).entries
              if p not in restrictive}
    if not before:
        return 0.0
    after = {p for p in _mined(sanitized, sigma_abs, mine, frequent_sanitized).entries
             if p not in restrictive}
    return (len(before) - len(after)) / len(before)


def artifactual_patterns(original: TransactionDatabase, sanitized: TransactionDatabase,
                         sigma_abs: int, *, mine: Miner = mine_frequent,
                         frequent_original: Optional[FrequentItemsets] = None,
                         frequent_sanitized: Optional[FrequentItemsets] = None) -> float:
    """Fraction of the sanitized database's frequent patterns that are new."""
    after = set(_mined(sanitized, sigma_abs, mine, frequent_sanitized).entries)
    if not after:
        return 0.0
    before = set(_mined(original, sigma_abs, mine, frequent_original).entries)
    return (len(after) - len(after & before)) / len(after)


def sanitization_rate(log: SanitizationLog, patterns: RestrictivePatterns,
                      original: TransactionDatabase) -> float:
    """Items deleted, relative to the total original support of the patterns."""
    denominator = sum(support_count(original, p) for p in patterns)
    if denominator == 0:
        return 0.0
    return log.total_removed / denominator


def dissimilarity(original: TransactionDatabase, sanitized: TransactionDatabase) -> float:
    """Occurrences lost / original occurrences, from the item frequency vectors.

    Any item more frequent after than before means the pair is not a
    deletion-only original/sanitized pair, which is an error.
    """
    before = item_frequencies(original)
    after = item_frequencies(sanitized)
    for item, count in after.items():
        if count > before.get(item, 0):
            raise ValueError(
                f"item {item} gained occurrences; arguments are not an "
                "original/sanitized pair (swapped?)"
            )
    total = sum(before.values())
    if total == 0:
        return 0.0
    lost = sum(count - after.get(item, 0) for item, count in before.items())
    return lost / total


@dataclass(frozen=True)
class MetricsReport:
    hiding_failure: float
    misses_cost: float
    sanitization_rate: float
    artifactual_patterns: float
    dissimilarity: float
    removed_items: int
    sigma_abs: int
    sanitize_ms: float = 0.0
    mine_ms: float = 0.0
    annotations: tuple = ()

    def metric_fields(self) -> dict:
        return {
            "hiding_failure": self.hiding_failure,
            "misses_cost": self.misses_cost,
            "sanitization_rate": self.sanitization_rate,
            "artifactual_patterns": self.artifactual_patterns,
            "dissimilarity": self.dissimilarity,
        }


def evaluate(original: TransactionDatabase, sanitized: TransactionDatabase,
             patterns: RestrictivePatterns, sigma_abs: int, *,
             log: Optional[SanitizationLog] = None,
             mine: Miner = mine_frequent,
             frequent_original: Optional[FrequentItemsets] = None,
             sanitize_ms: float = 0.0) -> MetricsReport:
    """Compute all five measures; mines each database at most once.

    Without a log the removed-item count is recovered from the frequency
    drop, which equals the deletion count for deletion-only sanitization.
    """
    annotations = []
    t0 = time.perf_counter()
    before = _mined(original, sigma_abs, mine, frequent_original)
    after = mine(sanitized, sigma_abs)
    mine_ms = (time.perf_counter() - t0) * 1000.0

    dif = dissimilarity(original, sanitized)  # validates the pair up front
    hf = hiding_failure(original, sanitized, patterns, sigma_abs)
    mc = misses_cost(original, sanitized, patterns, sigma_abs, mine=mine,
                     frequent_original=before, frequent_sanitized=after)
    ap = artifactual_patterns(original, sanitized, sigma_abs, mine=mine,
                              frequent_original=before, frequent_sanitized=after)

    if log is not None:
        removed = log.total_removed
        sr = sanitization_rate(log, patterns, original)
    else:
        before_freq = item_frequencies(original)
        after_freq = item_frequencies(sanitized)
        removed = sum(before_freq.values()) - sum(after_freq.values())
        denominator = sum(support_count(original, p) for p in patterns)
        sr = removed / denominator if denominator else 0.0

    if sum(1 for p in patterns if support_count(original, p) >= sigma_abs) == 0:
        annotations.append("hiding_failure: no restrictive pattern was frequent; defined as 0")
    restrictive = set(patterns)
    if not any(p not in restrictive for p in before.entries):
        annotations.append("misses_cost: no non-restrictive frequent patterns; defined as 0")
    if len(after) == 0:
        annotations.append("artifactual_patterns: sanitized database has no frequent patterns; defined as 0")
    if sum(support_count(original, p) for p in patterns) == 0:
        annotations.append("sanitization_rate: restrictive patterns have zero support; defined as 0")
    if original.total_occurrences() == 0:
        annotations.append("dissimilarity: original database is empty; defined as 0")

    return MetricsReport(
        hiding_failure=hf,
        misses_cost=mc,
        sanitization_rate=sr,
        artifactual_patterns=ap,
        dissimilarity=dif,
        removed_items=removed,
        sigma_abs=sigma_abs,
        sanitize_ms=sanitize_ms,
        mine_ms=mine_ms,
        annotations=tuple(annotations),
    )
