import json
import random

import pytest

from maxcover import (Removal, RestrictivePatterns, RoundRobin, SanitizationLog,
                      SanitizationState, build_index, parse_fimi, parse_patterns,
                      sanitize, select_victim, support_count, write_fimi)
from conftest import random_database, random_patterns


def test_round_robin_only_advances_on_ties():
    rr = RoundRobin()
    assert rr.pick(1) == 0
    assert rr.pick(1) == 0
    assert rr.rotation == 0
    assert [rr.pick(2) for _ in range(3)] == [0, 1, 0]
    assert rr.rotation == 3


def test_select_victim_max_cover_then_rotation():
    rr = RoundRobin()
    pool = [(1, 1), (3, 2), (4, 2), (6, 1)]
    assert select_victim(pool, rr) == 3
    assert select_victim(pool, rr) == 4
    assert select_victim([(5, 3), (2, 1)], rr) == 5  # unique max, no advance
    assert rr.rotation == 2
    with pytest.raises(ValueError):
        select_victim([], rr)


def test_common_pass_golden(toy_db, toy_patterns):
    state = SanitizationState(toy_db, toy_patterns, build_index(toy_db, toy_patterns))
    state.common_pass()
    assert [(r.tid, r.item, r.phase) for r in state.removals] == \
        [(2, 3, "common"), (5, 4, "common")]
    assert [r.patterns for r in state.removals] == [(0, 1), (1, 2)]
    assert state.supports == [2, 1, 1]
    assert state.trajectories == [
        [(0, 3), (1, 2)],
        [(0, 3), (1, 2), (2, 1)],
        [(0, 2), (2, 1)],
    ]


def test_full_run_golden(toy_db, toy_patterns):
    res = sanitize(toy_db, toy_patterns)
    assert [(r.step, r.tid, r.item, r.phase, r.patterns) for r in res.log.removals] == [
        (1, 2, 3, "common", (0, 1)),
        (2, 5, 4, "common", (1, 2)),
        (3, 5, 3, "residual", (0,)),
        (4, 1, 3, "residual", (0, 1)),
        (5, 2, 4, "residual", (2,)),
    ]
    assert write_fimi(res.sanitized) == "1 2 4 5\n1 6\n3 5 6\n2 3 5\n1 2 6\n"
    assert res.log.total_removed == 5
    assert res.log.victim_marks == \
        (frozenset({1, 2, 5}), frozenset({1, 2, 5}), frozenset({2, 5}))
    assert res.log.trajectories == (
        ((0, 3), (1, 2), (3, 1), (4, 0)),
        ((0, 3), (1, 2), (2, 1), (4, 0)),
        ((0, 2), (2, 1), (5, 0)),
    )
    # untouched transactions are literally the same objects
    assert res.sanitized.by_tid(3) is toy_db.by_tid(3)
    assert res.sanitized.by_tid(4) is toy_db.by_tid(4)


def test_single_pattern_run(toy_db):
    # every holder of {1, 3} is a common-pass transaction; the cover tie
    # rotates victims across items 1, 3, 1
    res = sanitize(toy_db, parse_patterns("1 3\n"))
    assert [(r.tid, r.item, r.phase) for r in res.log.removals] == [
        (1, 1, "common"), (2, 3, "common"), (5, 1, "common")]
    assert support_count(res.sanitized, frozenset({1, 3})) == 0
    assert res.log.trajectories == (((0, 3), (1, 2), (2, 1), (3, 0)),)


def test_empty_pattern_set(toy_db):
    res = sanitize(toy_db, RestrictivePatterns(()))
    assert res.sanitized == toy_db
    assert res.log.removals == ()
    assert res.log.total_removed == 0


def test_zero_support_patterns_are_no_ops(toy_db):
    res = sanitize(toy_db, parse_patterns("1 5 6\n"))
    assert res.sanitized == toy_db
    assert res.log.removals == ()
    assert res.log.trajectories == (((0, 0),),)


def test_pattern_spanning_whole_transaction_empties_it():
    db = parse_fimi("1\n1 2\n")
    res = sanitize(db, parse_patterns("1\n"))
    assert res.sanitized.by_tid(1).items == frozenset()
    assert res.sanitized.by_tid(2).items == frozenset({2})
    assert write_fimi(res.sanitized) == "\n2\n"


def test_log_serialization_golden(toy_db, toy_patterns):
    doc = sanitize(toy_db, toy_patterns).log.to_dict()
    assert doc["initial_supports"] == [3, 3, 2]
    assert doc["total_removed"] == 5
    assert doc["removals"][0] == \
        {"step": 1, "tid": 2, "item": 3, "phase": "common", "patterns": [1, 2]}
    assert doc["victim_marks"]["3"] == [2, 5]
    assert doc["trajectories"]["3"] == [[0, 2], [2, 1], [5, 0]]
    json.dumps(doc)  # must be serializable as-is


def test_replay_rejects_a_missing_item(toy_db):
    log = SanitizationLog(
        initial_supports=(1,),
        removals=(Removal(1, 1, 9, "common", (0,)),),
        victim_marks=(frozenset({1}),),
        trajectories=(((0, 1), (1, 0)),),
    )
    with pytest.raises(ValueError):
        log.replay(toy_db)


def test_random_runs_hold_the_invariants():
    rng = random.Random(441)
    for _ in range(120):
        db = random_database(rng, max_items=12, max_transactions=30)
        rp = random_patterns(rng, db, max_patterns=6)
        first = sanitize(db, rp)
        second = sanitize(db, rp)
        assert first.sanitized == second.sanitized
        assert first.log == second.log
        assert first.log.replay(db) == first.sanitized

        for p in rp:
            assert support_count(first.sanitized, p) == 0

        assert [t.tid for t in first.sanitized] == [t.tid for t in db]
        sensitive = {t.tid for t in db if any(p <= t.items for p in rp)}
        for before, after in zip(db, first.sanitized):
            assert after.items <= before.items
            if before.tid not in sensitive:
                assert after.items == before.items

        total_support = sum(support_count(db, p) for p in rp)
        assert first.log.total_removed <= total_support

        charged = set()
        for r in first.log.removals:
            assert r.patterns, "every removal must weaken at least one pattern"
            for pos in r.patterns:
                assert r.item in rp[pos]
                assert (pos, r.tid) not in charged
                charged.add((pos, r.tid))
        for pos, marks in enumerate(first.log.victim_marks):
            assert marks == frozenset(t for q, t in charged if q == pos)

        for pos, trajectory in enumerate(first.log.trajectories):
            sups = [s for _, s in trajectory]
            assert sups[0] == support_count(db, rp[pos])
            assert all(a - 1 == b for a, b in zip(sups, sups[1:]))
            assert sups[-1] == 0
