"""Seeded synthetic market-basket data in the classic Quest style.

Transactions are assembled from a weighted pool of "source" itemsets:
itemset sizes are Poisson around a mean, consecutive pool entries share a
random fraction of items, pool weights are exponential, and each pick is
corrupted by dropping items before insertion.  The defaults approximate the
widely used T10/I4 retail benchmarks (mean transaction size 10, mean source
itemset size 4, 1000 distinct items) at desk scale.
"""

from __future__ import annotations

import numpy as np

from .transactions import TransactionDatabase

__all__ = ["generate_baskets"]


def _source_pool(rng: np.random.Generator, n_items: int, pool_size: int,
                 mean_size: float, max_size: int, correlation: float):
    cap = min(max_size, n_items)  # a source itemset cannot exceed the universe
    sizes = np.minimum(np.maximum(1, rng.poisson(mean_size, size=pool_size)), cap)
    pool = []
    previous: list = []
    for size in sizes:
        picked = set()
        if previous:
            share = min(1.0, rng.exponential(correlation))
            take = min(len(previous), int(round(share * size)))
            if take:
                picked.update(rng.choice(previous, size=take, replace=False))
        while len(picked) < size:
            picked.add(int(rng.integers(1, n_items + 1)))
        pool.append(sorted(int(i) for i in picked))
        previous = pool[-1]
    weights = rng.exponential(1.0, size=pool_size)
    weights /= weights.sum()
    corruption = np.clip(rng.normal(0.5, 0.1, size=pool_size), 0.0, 1.0)
    return pool, weights, corruption


def generate_baskets(n_transactions: int, *, n_items: int = 1000,
                     avg_transaction_size: float = 10.0,
                     avg_itemset_size: float = 4.0,
                     max_itemset_size: int = 6,
                     pool_size: int = 400,
                     correlation: float = 0.5,
                     seed: int = 0) -> TransactionDatabase:
    """Generate ``n_transactions`` baskets, deterministic for a given seed."""
    if n_transactions < 0:
        raise ValueError("transaction count must be >= 0")
    if n_items < 1:
        raise ValueError("need at least one item")
    rng = np.random.default_rng(seed)
    pool, weights, corruption = _source_pool(
        rng, n_items, pool_size, avg_itemset_size, max_itemset_size, correlation
    )
    indices = np.arange(pool_size)
    rows = []
    for _ in range(n_transactions):
        target = max(1, int(rng.poisson(avg_transaction_size)))
        basket: set = set()
        attempts = 0
        while len(basket) < target and attempts < 50:
            attempts += 1
            pick = int(rng.choice(indices, p=weights))
            chunk = list(pool[pick])
            # corrupt: drop random items while the coin keeps coming up
            while chunk and rng.random() < corruption[pick]:
                chunk.pop(int(rng.integers(len(chunk))))
            if not chunk:
                continue
            if basket and len(basket) + len(chunk) > target:
                # half the time the oversized itemset still goes in
                if rng.random() < 0.5:
                    basket.update(chunk)
                break
            basket.update(chunk)
        if not basket:
            basket.add(int(rng.integers(1, n_items + 1)))
        rows.append(basket)
    return TransactionDatabase.from_itemsets(rows)
