import random
from itertools import combinations

import pytest

from maxcover import (RestrictivePatterns, TransactionDatabase, parse_fimi,
                      parse_patterns)

# a=1 .. f=6; three overlapping patterns with supports 3, 3, 2
TOY_TEXT = "1 2 3 4 5\n1 3 4 6\n3 5 6\n2 3 5\n1 2 3 4 6\n"
TOY_PATTERN_TEXT = "1 3\n3 4\n4 6\n"


@pytest.fixture
def toy_db():
    return parse_fimi(TOY_TEXT)


@pytest.fixture
def toy_patterns():
    return parse_patterns(TOY_PATTERN_TEXT)


def random_database(rng: random.Random, max_items: int = 15,
                    max_transactions: int = 40,
                    allow_empty: bool = False) -> TransactionDatabase:
    n_items = rng.randint(2, max_items)
    n_rows = rng.randint(1, max_transactions)
    rows = []
    for _ in range(n_rows):
        size = rng.randint(0 if allow_empty else 1, n_items)
        rows.append(rng.sample(range(1, n_items + 1), size))
    return TransactionDatabase.from_itemsets(rows)


def random_patterns(rng: random.Random, db: TransactionDatabase,
                    max_patterns: int = 8) -> RestrictivePatterns:
    universe = sorted(db.item_universe)
    wanted = rng.randint(1, max_patterns)
    out, seen = [], set()
    attempts = 0
    while len(out) < wanted and attempts < 50:
        attempts += 1
        if rng.random() < 0.7:
            base = rng.choice(db.transactions).items
            if not base:
                continue
            p = frozenset(rng.sample(sorted(base), rng.randint(1, min(4, len(base)))))
        else:
            p = frozenset(rng.sample(universe, rng.randint(1, min(4, len(universe)))))
            if rng.random() < 0.1:
                p |= {max(universe) + 1}  # an item the database never saw
        if p not in seen:
            seen.add(p)
            out.append(p)
    if not out:
        out.append(frozenset({universe[0]}))
    return RestrictivePatterns.from_iterable(out)


def subset_supports(db: TransactionDatabase) -> dict:
    """Support of every pattern with support >= 1, by per-transaction
    subset enumeration; independent of both miners."""
    supports = {}
    for t in db:
        items = sorted(t.items)
        for k in range(1, len(items) + 1):
            for combo in combinations(items, k):
                key = frozenset(combo)
                supports[key] = supports.get(key, 0) + 1
    return supports
