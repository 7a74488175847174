"""Frequent itemset mining: a levelwise miner and a brute-force oracle.

``mine_frequent`` is the production path (candidate generation over sorted
item tuples, support via tidset intersection).  ``brute_force_frequent``
enumerates every non-empty subset of the item universe and exists so the two
can be checked against each other; it refuses universes past 20 items.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, List, Mapping

from .transactions import TransactionDatabase

__all__ = [
    "FrequentItemsets",
    "absolute_threshold",
    "mine_frequent",
    "brute_force_frequent",
]


@dataclass(frozen=True)
class FrequentItemsets:
    """Mining result: pattern -> support count, plus the threshold used."""

    entries: Mapping
    sigma_abs: int
    sigma_rel: "float | None" = None

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, pattern) -> bool:
        return pattern in self.entries

    def support(self, pattern) -> int:
        return self.entries.get(pattern, 0)

    def patterns_sorted(self) -> List[frozenset]:
        """Patterns ordered by length, then lexicographically by sorted items."""
        return sorted(self.entries, key=lambda p: (len(p), sorted(p)))

    def dump_lines(self) -> Iterator[str]:
        """Delimited dump, one ``items : support`` line per pattern."""
        for p in self.patterns_sorted():
            yield " ".join(str(i) for i in sorted(p)) + f" : {self.entries[p]}"


def absolute_threshold(sigma_rel: float, n_transactions: int) -> int:
    """Convert a relative threshold in (0, 1] to an absolute count (ceiling)."""
    if not 0.0 < sigma_rel <= 1.0:
        raise ValueError(f"relative threshold must be in (0, 1], got {sigma_rel}")
    return math.ceil(sigma_rel * n_transactions)


def _check_sigma(sigma_abs: int) -> None:
    if sigma_abs < 1:
        raise ValueError(f"absolute threshold must be >= 1, got {sigma_abs}")


def mine_frequent(db: TransactionDatabase, sigma_abs: int,
                  sigma_rel: "float | None" = None) -> FrequentItemsets:
    """All itemsets with support >= ``sigma_abs``, mined levelwise.

    Candidates of size k are built by joining size-(k-1) itemsets sharing a
    (k-2)-prefix and pruned by downward closure before their tidsets are
    intersected, so supports are exact and no candidate is counted twice.
    Deterministic: iteration follows sorted item order throughout.
    """
    _check_sigma(sigma_abs)
    tidsets = {}
    for t in db:
        for item in t.items:
            tidsets.setdefault(item, set()).add(t.tid)
    entries = {}
    current = {}
    for item in sorted(tidsets):
        tids = frozenset(tidsets[item])
        if len(tids) >= sigma_abs:
            current[(item,)] = tids
            entries[frozenset((item,))] = len(tids)
    while current:
        keys = sorted(current)
        nxt = {}
        for i, left in enumerate(keys):
            for right in keys[i + 1:]:
                if left[:-1] != right[:-1]:
                    break
                cand = left + (right[-1],)
                # downward closure: every (k-1)-subset must be frequent; the
                # two parents cover dropping the last two positions.
                if any(cand[:j] + cand[j + 1:] not in current for j in range(len(cand) - 2)):
                    continue
                tids = current[left] & current[right]
                if len(tids) >= sigma_abs:
                    nxt[cand] = tids
                    entries[frozenset(cand)] = len(tids)
        current = nxt
    return FrequentItemsets(entries, sigma_abs, sigma_rel)


def brute_force_frequent(db: TransactionDatabase, sigma_abs: int,
                         sigma_rel: "float | None" = None) -> FrequentItemsets:
    """Oracle miner: count every non-empty subset of the item universe.

    Quadratic-exponential on purpose; guarded to universes of at most 20
    items so a typo cannot wedge a test run.
    """
    _check_sigma(sigma_abs)
    universe = sorted(db.item_universe)
    if len(universe) > 20:
        raise ValueError(f"brute-force mining capped at 20 items, universe has {len(universe)}")
    bit = {item: 1 << pos for pos, item in enumerate(universe)}
    masks = []
    for t in db:
        m = 0
        for item in t.items:
            m |= bit[item]
        masks.append(m)
    entries = {}
    for subset in range(1, 1 << len(universe)):
        sup = sum(1 for m in masks if m & subset == subset)
        if sup >= sigma_abs:
            pattern = frozenset(item for item in universe if bit[item] & subset)
            entries[pattern] = sup
    return FrequentItemsets(entries, sigma_abs, sigma_rel)
