"""Lookup tables driving sanitization, built in one pass over the database.

Three tables are kept, all keyed only by restrictive data so memory scales
with the patterns rather than the database:

* item -> tids containing it (restricted items only),
* pattern -> tids containing the whole pattern (derived by intersecting the
  item rows, not by rescanning),
* item -> patterns the item belongs to.

From these fall out each pattern's support, each restricted item's *cover*
(how many patterns it would weaken if deleted), and for every sensitive
transaction its *degree* (patterns it contains) and size.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterator, Tuple

from .transactions import RestrictivePatterns, TransactionDatabase

__all__ = [
    "PatternIndex",
    "build_index",
    "sensitive_order",
    "common_tids",
    "nonsensitive_part",
    "dump_tables",
]


@dataclass(frozen=True)
class PatternIndex:
    patterns: tuple
    item_tids: Dict[int, Tuple[int, ...]]
    pattern_tids: tuple
    item_patterns: Dict[int, Tuple[int, ...]]
    support_counts: tuple
    degrees: Dict[int, int]
    sizes: Dict[int, int]

    def cover(self, item: int) -> int:
        """How many restrictive patterns contain ``item``."""
        return len(self.item_patterns.get(item, ()))

    @cached_property
    def sensitive_tids(self) -> frozenset:
        """Transactions containing at least one restrictive pattern."""
        return frozenset(self.degrees)


def build_index(db: TransactionDatabase, patterns: RestrictivePatterns) -> PatternIndex:
    """Build all tables from a single scan of ``db``.

    Only the item -> tids table needs the scan; pattern rows come from
    intersecting item rows, and degrees/sizes follow from those.
    """
    restricted = patterns.restricted_items
    item_tids = {item: [] for item in sorted(restricted)}
    sizes_by_tid = {}
    for t in db:  # the one and only database pass
        sizes_by_tid[t.tid] = t.size
        for item in t.items & restricted:
            item_tids[item].append(t.tid)

    pattern_tids = []
    for p in patterns:
        rows = [set(item_tids[item]) for item in p]
        common = set.intersection(*rows) if rows else set()
        pattern_tids.append(tuple(sorted(common)))

    item_patterns = {}
    for pos, p in enumerate(patterns):
        for item in sorted(p):
            item_patterns.setdefault(item, []).append(pos)

    degrees = {}
    for tids in pattern_tids:
        for tid in tids:
            degrees[tid] = degrees.get(tid, 0) + 1

    return PatternIndex(
        patterns=tuple(patterns),
        item_tids={item: tuple(tids) for item, tids in item_tids.items()},
        pattern_tids=tuple(pattern_tids),
        item_patterns={item: tuple(rows) for item, rows in item_patterns.items()},
        support_counts=tuple(len(tids) for tids in pattern_tids),
        degrees=degrees,
        sizes={tid: sizes_by_tid[tid] for tid in sorted(degrees)},
    )


def sensitive_order(ix: PatternIndex) -> tuple:
    """Sensitive tids, most entangled first.

    Sort key: degree + size descending, then degree descending, then tid
    ascending, so a transaction touching more patterns outranks an equally
    heavy one that is merely long.
    """
    return tuple(sorted(
        ix.degrees,
        key=lambda tid: (-(ix.degrees[tid] + ix.sizes[tid]), -ix.degrees[tid], tid),
    ))


def common_tids(ix: PatternIndex) -> tuple:
    """Tids containing *every* restrictive pattern, ascending; empty when no patterns."""
    if not ix.pattern_tids:
        return ()
    common = set(ix.pattern_tids[0])
    for tids in ix.pattern_tids[1:]:
        common &= set(tids)
    return tuple(sorted(common))


def nonsensitive_part(db: TransactionDatabase, ix: PatternIndex) -> TransactionDatabase:
    """The transactions no restrictive pattern touches; original tids retained."""
    keep = tuple(t for t in db if t.tid not in ix.degrees)
    return TransactionDatabase(keep)


def dump_tables(ix: PatternIndex) -> Iterator[str]:
    """Debug dump of the three tables, one line per key; pattern ids are 1-based."""
    yield "# item : transactions"
    for item in sorted(ix.item_tids):
        yield f"{item} : " + " ".join(str(tid) for tid in ix.item_tids[item])
    yield "# pattern : transactions"
    for pos, tids in enumerate(ix.pattern_tids, start=1):
        yield f"{pos} : " + " ".join(str(tid) for tid in tids)
    yield "# item : patterns"
    for item in sorted(ix.item_patterns):
        yield f"{item} : " + " ".join(str(pos + 1) for pos in ix.item_patterns[item])
