"""End-to-end acceptance gate: eight checks, one PASS/FAIL line each.

Run ``pytest tests/test_acceptance.py -v -s`` to see the lines.  The random
corpus checks use frozen seeds so reruns exercise identical instances.
"""

import random
import time
from contextlib import contextmanager

import pytest

from maxcover import (RestrictivePatterns, SanitizationState, absolute_threshold,
                      artifactual_patterns, brute_force_frequent, build_index,
                      dissimilarity, evaluate, generate_baskets, hiding_failure,
                      mine_frequent, misses_cost, parse_fimi, parse_patterns,
                      sanitization_rate, sanitize, support_count, write_fimi)
from maxcover.bench import run_bench, shuffled_candidates
from maxcover.cli import main as cli_main
from conftest import (TOY_PATTERN_TEXT, TOY_TEXT, random_database,
                      random_patterns, subset_supports)

CORPUS_SEED = 20240822
MINER_SEED = 20240823
DATASET_SEED = 20240

_cache = {}


@contextmanager
def criterion(name, budget_s=None):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - t0
        in_budget = budget_s is None or elapsed < budget_s
        verdict = "PASS" if ok and in_budget else "FAIL"
        print(f"{verdict} {name} ({elapsed:.2f}s)")
    if not in_budget:
        raise AssertionError(f"{name}: {elapsed:.1f}s exceeded the {budget_s}s budget")


@pytest.fixture(scope="module")
def corpus():
    rng = random.Random(CORPUS_SEED)
    cases = []
    for _ in range(500):
        db = random_database(rng, max_items=10, max_transactions=40)
        cases.append((db, random_patterns(rng, db, max_patterns=8)))
    return cases


def _sanitized_corpus(corpus):
    if "results" not in _cache:
        _cache["results"] = [sanitize(db, rp) for db, rp in corpus]
    return _cache["results"]


def _support_maps(corpus):
    if "maps" not in _cache:
        results = _sanitized_corpus(corpus)
        _cache["maps"] = [(subset_supports(db), subset_supports(res.sanitized))
                          for (db, _), res in zip(corpus, results)]
    return _cache["maps"]


@pytest.fixture(scope="module")
def basket_db():
    return generate_baskets(8000, seed=DATASET_SEED)


def test_01_golden_trace():
    with criterion("golden trace", budget_s=1.0):
        db = parse_fimi(TOY_TEXT)
        rp = parse_patterns(TOY_PATTERN_TEXT)
        state = SanitizationState(db, rp, build_index(db, rp))
        state.common_pass()
        assert [(r.tid, r.item) for r in state.removals] == [(2, 3), (5, 4)]
        assert state.trajectories == [
            [(0, 3), (1, 2)],
            [(0, 3), (1, 2), (2, 1)],
            [(0, 2), (2, 1)],
        ]
        res = sanitize(db, rp)
        assert write_fimi(res.sanitized) == "1 2 4 5\n1 6\n3 5 6\n2 3 5\n1 2 6\n"
        assert sanitization_rate(res.log, rp, db) == 0.625
        assert dissimilarity(db, res.sanitized) == 0.25
        assert hiding_failure(db, res.sanitized, rp, 1) == 0.0


def test_02_hiding_completeness(corpus):
    with criterion("hiding completeness", budget_s=30.0):
        results = _sanitized_corpus(corpus)
        for i, ((db, rp), res) in enumerate(zip(corpus, results)):
            before = [support_count(db, p) for p in rp]
            after = [support_count(res.sanitized, p) for p in rp]
            assert all(a == 0 for a in after)
            n = len(db)
            for sigma in range(1, n + 1):
                initially = sum(1 for b in before if b >= sigma)
                still = sum(1 for a in after if a >= sigma)
                assert (still / initially if initially else 0.0) == 0.0
            if i % 25 == 0:
                for sigma in (1, 2, n):
                    assert hiding_failure(db, res.sanitized, rp, sigma) == 0.0


def test_03_no_artifactual_patterns(corpus):
    with criterion("artifactual patterns"):
        results = _sanitized_corpus(corpus)
        maps = _support_maps(corpus)
        for i, ((db, rp), res) in enumerate(zip(corpus, results)):
            before, after = maps[i]
            # no pattern's support ever rises, so the frequent set can only
            # shrink and nothing new can appear at any threshold
            for pattern, sup in after.items():
                assert sup <= before.get(pattern, 0)
            n = len(db)
            for sigma in (1, 2, n):
                fs = {p for p, s in after.items() if s >= sigma}
                fo = {p for p, s in before.items() if s >= sigma}
                assert (len(fs - fo) / len(fs) if fs else 0.0) == 0.0
            if i % 25 == 0:
                for sigma in (1, 2, n):
                    assert artifactual_patterns(
                        db, res.sanitized, sigma, mine=brute_force_frequent) == 0.0


def test_04_miner_matches_oracle():
    with criterion("miner vs oracle", budget_s=60.0):
        rng = random.Random(MINER_SEED)
        for case in range(200):
            db = random_database(rng, max_items=12, max_transactions=30)
            full = brute_force_frequent(db, 1)
            assert full.entries == subset_supports(db)
            n = len(db)
            for sigma in range(1, n + 1):
                expected = {p: s for p, s in full.entries.items() if s >= sigma}
                assert mine_frequent(db, sigma).entries == expected
            if case % 10 == 0:
                for sigma in {2, max(1, n // 2), n}:
                    direct = brute_force_frequent(db, sigma)
                    assert mine_frequent(db, sigma).entries == direct.entries


def test_05_metric_definitions(corpus):
    with criterion("metric definitions"):
        results = _sanitized_corpus(corpus)
        maps = _support_maps(corpus)
        for i, ((db, rp), res) in enumerate(zip(corpus, results)):
            bmap, amap = maps[i]
            s = res.sanitized
            n = len(db)
            restrictive = set(rp)
            for sigma in {1, 2, n}:
                fo = mine_frequent(db, sigma)
                fs = mine_frequent(s, sigma)
                b = sum(1 for p in rp if bmap.get(p, 0) >= sigma)
                a = sum(1 for p in rp if amap.get(p, 0) >= sigma)
                assert hiding_failure(db, s, rp, sigma) == (a / b if b else 0.0)

                ob = {p for p, v in bmap.items() if v >= sigma} - restrictive
                oa = {p for p, v in amap.items() if v >= sigma} - restrictive
                want_mc = (len(ob) - len(oa)) / len(ob) if ob else 0.0
                got_mc = misses_cost(db, s, rp, sigma,
                                     frequent_original=fo, frequent_sanitized=fs)
                assert got_mc == want_mc

                fb = {p for p, v in bmap.items() if v >= sigma}
                fa = {p for p, v in amap.items() if v >= sigma}
                want_ap = len(fa - fb) / len(fa) if fa else 0.0
                got_ap = artifactual_patterns(db, s, sigma, frequent_original=fo,
                                              frequent_sanitized=fs)
                assert got_ap == want_ap

            # the occurrence drop is exactly the logged removal count, and
            # dissimilarity is that count divided by the original occurrences
            occ = db.total_occurrences()
            lost = occ - s.total_occurrences()
            assert lost == res.log.total_removed
            assert dissimilarity(db, s) == (lost / occ if occ else 0.0)
            denom = sum(support_count(db, p) for p in rp)
            assert sanitization_rate(res.log, rp, db) == \
                (res.log.total_removed / denom if denom else 0.0)


def test_06_desk_scale_trend(basket_db):
    with criterion("desk-scale trend", budget_s=120.0):
        db = basket_db.prefix(1000)
        sigma = absolute_threshold(0.006, len(db))
        assert sigma == 6
        frequent = mine_frequent(db, sigma)
        pool = shuffled_candidates(frequent, DATASET_SEED)
        rp = RestrictivePatterns.from_iterable(pool[:5])
        assert sorted(len(p) for p in rp) == [2, 3, 4, 4, 5]
        assert sorted(frequent.support(p) for p in rp) == [8, 11, 15, 18, 19]
        res = sanitize(db, rp)
        report = evaluate(db, res.sanitized, rp, sigma, log=res.log,
                          frequent_original=frequent)
        assert report.hiding_failure == 0.0
        assert report.misses_cost <= 0.05
        assert report.dissimilarity <= 0.05
        assert report.sanitization_rate <= 1.0
        assert report.artifactual_patterns == 0.0


def test_07_linear_scaling(basket_db):
    with criterion("linear scaling", budget_s=300.0):
        rows_n, fits_n, notes_n = run_bench(
            basket_db, [1000, 2000, 4000, 8000], [5],
            sigma_rel=0.006, seed=DATASET_SEED, repeats=5, draws=3)
        assert notes_n == []
        assert len(rows_n) == 4
        by_size = next(f for f in fits_n if f.label.startswith("elapsed_ms ~ size"))
        assert by_size.r_squared >= 0.9, by_size

        rows_p, fits_p, notes_p = run_bench(
            basket_db, [1000], [5, 10, 15, 20, 25],
            sigma_rel=0.006, seed=DATASET_SEED, repeats=5, draws=3)
        assert notes_p == []
        assert len(rows_p) == 5
        by_count = next(f for f in fits_p if f.label.startswith("elapsed_ms ~ patterns"))
        assert by_count.r_squared >= 0.9, by_count

        for r in rows_n + rows_p:
            assert r.hiding_failure == 0.0
            assert r.artifactual_patterns == 0.0


def test_08_deterministic_bench_output(basket_db, tmp_path):
    with criterion("deterministic bench output"):
        data = tmp_path / "data.fimi"
        data.write_text(write_fimi(basket_db.prefix(2000)))
        args = ["bench", "--input", str(data), "--min-sup", "0.006",
                "--sizes", "1000,2000", "--num-patterns", "3,5",
                "--seed", "11", "--repeats", "1", "--no-figures"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert cli_main(args + ["--no-timing", "--out", str(a)]) == 0
        assert cli_main(args + ["--no-timing", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

        # with timing on, everything but the wall-clock column still matches
        t1, t2 = tmp_path / "t1.csv", tmp_path / "t2.csv"
        assert cli_main(args + ["--out", str(t1)]) == 0
        assert cli_main(args + ["--out", str(t2)]) == 0

        def stripped(path):
            return [line.rsplit(",", 1)[0] for line in path.read_text().splitlines()
                    if not line.startswith("#")]

        assert stripped(t1) == stripped(t2)
