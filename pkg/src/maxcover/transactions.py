"""Transactional data model: items, transactions, databases, restrictive patterns.

Items are positive integer labels.  A pattern is a plain ``frozenset`` of
items.  A transaction couples a 1-based identifier with its itemset; the
identifier survives sanitization so removals stay auditable.  Containers are
immutable, so a database can be shared freely between the indexing, mining
and sanitization stages.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

Item = int
Pattern = frozenset

__all__ = [
    "Item",
    "Pattern",
    "Transaction",
    "TransactionDatabase",
    "RestrictivePatterns",
    "contains",
    "support_count",
]


def _check_item(item: object) -> int:
    if not isinstance(item, int) or isinstance(item, bool) or item < 1:
        raise ValueError(f"item labels must be integers >= 1, got {item!r}")
    return item


@dataclass(frozen=True)
class Transaction:
    """One identified transaction; ``items`` may be empty after sanitization."""

    tid: int
    items: frozenset

    @property
    def size(self) -> int:
        return len(self.items)

    def contains(self, pattern: frozenset) -> bool:
        return pattern <= self.items


@dataclass(frozen=True)
class TransactionDatabase:
    """An ordered collection of transactions.

    Databases built through :meth:`from_itemsets` (or the FIMI parser) carry
    tids exactly ``1..N`` in order.  Views produced by filtering keep the
    original tids, so positional access goes through :meth:`by_tid`.
    """

    transactions: tuple

    @classmethod
    def from_itemsets(cls, itemsets: Iterable[Iterable[int]]) -> "TransactionDatabase":
        rows = []
        for tid, items in enumerate(itemsets, start=1):
            rows.append(Transaction(tid, frozenset(_check_item(i) for i in items)))
        return cls(tuple(rows))

    def __len__(self) -> int:
        return len(self.transactions)

    def __iter__(self) -> Iterator[Transaction]:
        return iter(self.transactions)

    @cached_property
    def item_universe(self) -> frozenset:
        """Union of all items appearing anywhere in the database."""
        universe = set()
        for t in self.transactions:
            universe |= t.items
        return frozenset(universe)

    @cached_property
    def _tid_map(self) -> Mapping[int, Transaction]:
        return {t.tid: t for t in self.transactions}

    def by_tid(self, tid: int) -> Transaction:
        return self._tid_map[tid]

    def prefix(self, count: int) -> "TransactionDatabase":
        """First ``count`` transactions; errors if the database is shorter."""
        if not 0 <= count <= len(self.transactions):
            raise ValueError(
                f"prefix of {count} transactions requested, database has "
                f"{len(self.transactions)}"
            )
        return TransactionDatabase(self.transactions[:count])

    def total_occurrences(self) -> int:
        """Total item occurrences, i.e. the sum of all transaction sizes."""
        return sum(t.size for t in self.transactions)

    def replace_items(self, new_items: Mapping[int, frozenset]) -> "TransactionDatabase":
        """Copy of the database with the given tids' itemsets swapped out.

        Transactions not named in ``new_items`` are reused as-is.
        """
        rows = []
        for t in self.transactions:
            if t.tid in new_items:
                rows.append(Transaction(t.tid, frozenset(new_items[t.tid])))
            else:
                rows.append(t)
        return TransactionDatabase(tuple(rows))


def contains(transaction: Transaction, pattern: frozenset) -> bool:
    """True when every item of ``pattern`` occurs in the transaction."""
    return pattern <= transaction.items


def support_count(db: TransactionDatabase, pattern: frozenset) -> int:
    """Number of transactions containing ``pattern``.  Empty patterns are invalid."""
    if not pattern:
        raise ValueError("support of the empty pattern is undefined")
    return sum(1 for t in db.transactions if pattern <= t.items)


@dataclass(frozen=True)
class RestrictivePatterns:
    """The ordered set of patterns a database owner wants hidden.

    Order matters: tie-breaks during sanitization fall back to the position a
    pattern was declared in.  Duplicates and empty patterns are rejected.
    """

    patterns: tuple

    @classmethod
    def from_iterable(cls, patterns: Iterable[Iterable[int]]) -> "RestrictivePatterns":
        rows = []
        seen = set()
        for pos, raw in enumerate(patterns, start=1):
            pattern = frozenset(_check_item(i) for i in raw)
            if not pattern:
                raise ValueError(f"pattern {pos} is empty")
            if pattern in seen:
                raise ValueError(f"pattern {pos} duplicates an earlier pattern")
            seen.add(pattern)
            rows.append(pattern)
        return cls(tuple(rows))

    def __len__(self) -> int:
        return len(self.patterns)

    def __iter__(self) -> Iterator[frozenset]:
        return iter(self.patterns)

    def __getitem__(self, index: int) -> frozenset:
        return self.patterns[index]

    @cached_property
    def restricted_items(self) -> frozenset:
        """Union of the items appearing in any restrictive pattern."""
        out = set()
        for p in self.patterns:
            out |= p
        return frozenset(out)
