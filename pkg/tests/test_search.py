"""Exact and heuristic minimization of |A + lam*A|."""

import random
from itertools import combinations

import pytest

from dilates.errors import ScaleCapError
from dilates.residues import ResidueSet, canonical_form, dilate_sum
from dilates.search import (SearchTask, exact_min_dilate_sumset,
                            exact_min_reference, heuristic_min_dilate_sumset,
                            sweep, sweep_csv)
from dilates.search import _combination_unrank, _next_combination


def test_task_validation():
    with pytest.raises(ValueError, match="prime"):
        SearchTask(p=10, lam=2, m=2)
    with pytest.raises(ValueError):
        SearchTask(p=7, lam=2, m=0)
    with pytest.raises(ValueError):
        SearchTask(p=7, lam=2, m=8)
    with pytest.raises(ValueError):
        SearchTask(p=7, lam=2, m=2, mode="magic")
    t = SearchTask(p=7, lam=2, m=2)
    assert t.digest() == SearchTask(p=7, lam=2, m=2).digest()
    assert t.digest() != SearchTask(p=7, lam=3, m=2).digest()


def test_combination_enumeration_matches_itertools():
    for p, m in ((6, 3), (7, 2), (9, 4)):
        expected = list(combinations(range(p), m))
        got = []
        combo = _combination_unrank(p, m, 0)
        while True:
            got.append(tuple(combo))
            if not _next_combination(combo, p):
                break
        assert got == expected
        for rank in (0, 1, len(expected) // 2, len(expected) - 1):
            assert tuple(_combination_unrank(p, m, rank)) == expected[rank]


def test_exact_examples():
    assert exact_min_dilate_sumset(SearchTask(p=7, lam=2, m=1)).min_size == 1
    r = exact_min_dilate_sumset(SearchTask(p=7, lam=2, m=2))
    assert r.min_size == 4
    assert r.witness == ResidueSet.from_elements(7, [0, 1])
    assert r.exact
    r = exact_min_dilate_sumset(SearchTask(p=7, lam=1, m=3))
    assert r.min_size == 5  # 2m-1, witness a progression
    assert r.witness == ResidueSet.from_elements(7, [0, 1, 2])


def test_exact_m2_oracle_all_21_subsets():
    # independent oracle: enumerate all C(7,2)=21 subsets directly
    best = min(len(dilate_sum(ResidueSet.from_elements(7, pair), 2))
               for pair in combinations(range(7), 2))
    assert best == 4
    assert exact_min_dilate_sumset(SearchTask(p=7, lam=2, m=2)).min_size == 4


def test_exact_agrees_with_reference():
    for p in (5, 7, 11):
        for lam in (2, 3):
            for m in range(1, (p - 1) // 2 + 1):
                task = SearchTask(p=p, lam=lam, m=m)
                assert exact_min_dilate_sumset(task).min_size == \
                    exact_min_reference(p, lam, m)


def test_exact_results_meet_cd_floor():
    for p, lam, m in ((11, 2, 3), (13, 3, 4), (7, 2, 3)):
        r = exact_min_dilate_sumset(SearchTask(p=p, lam=lam, m=m))
        assert r.min_size >= min(2 * m - 1, p)
        assert is_valid_result(r, p, lam)


def is_valid_result(result, p, lam):
    return (len(dilate_sum(result.witness, lam)) == result.min_size
            and result.witness == canonical_form(result.witness))


def test_exact_parallel_matches_serial():
    task = SearchTask(p=13, lam=2, m=5)
    serial = exact_min_dilate_sumset(task, workers=1)
    for workers in (2, 4):
        assert exact_min_dilate_sumset(task, workers=workers) == serial


def test_exact_class_cap():
    with pytest.raises(ScaleCapError, match="heuristic"):
        exact_min_dilate_sumset(SearchTask(p=101, lam=2, m=40), class_cap=10)


def test_heuristic_budget_zero_returns_interval():
    t = SearchTask(p=11, lam=2, m=3, mode="heuristic", seed=9, budget=0)
    r = heuristic_min_dilate_sumset(t)
    assert r.witness == ResidueSet.from_elements(11, [0, 1, 2])
    assert r.min_size == len(dilate_sum(r.witness, 2))
    assert not r.exact


def test_heuristic_matches_exact_on_small_case():
    for seed in (1, 2, 3):
        t = SearchTask(p=7, lam=2, m=2, mode="heuristic", seed=seed, budget=1000)
        assert heuristic_min_dilate_sumset(t).min_size == 4


def test_heuristic_monotone_in_budget_and_deterministic():
    values = []
    for budget in (0, 10, 100, 400):
        t = SearchTask(p=13, lam=3, m=4, mode="heuristic", seed=7, budget=budget)
        r1 = heuristic_min_dilate_sumset(t)
        r2 = heuristic_min_dilate_sumset(t)
        assert r1 == r2
        values.append(r1.min_size)
    assert all(a >= b for a, b in zip(values, values[1:]))


def test_heuristic_never_beats_exact():
    rng = random.Random(50)
    for _ in range(10):
        p = rng.choice([7, 11, 13])
        m = rng.randint(1, (p - 1) // 2)
        lam = rng.randint(2, 4)
        exact = exact_min_dilate_sumset(SearchTask(p=p, lam=lam, m=m)).min_size
        heur = heuristic_min_dilate_sumset(
            SearchTask(p=p, lam=lam, m=m, mode="heuristic",
                       seed=rng.randrange(2**32), budget=200)).min_size
        assert heur >= exact


# ---------------------------------------------------------------- sweep

def test_heuristic_full_set_edge():
    t = SearchTask(p=5, lam=2, m=5, mode="heuristic", seed=1, budget=50)
    r = heuristic_min_dilate_sumset(t)
    assert r.min_size == 5 and r.witness == ResidueSet.full(5)


def test_sweep_heuristic_mode():
    report = sweep([11], [2], [3], mode="heuristic", seed=4, budget=100)
    (result,) = report.results
    assert not result.exact
    assert result.min_size >= exact_min_dilate_sumset(
        SearchTask(p=11, lam=2, m=3)).min_size
    assert sweep_csv(report).splitlines()[1].split(",")[6] == "false"


def test_sweep_empty_inputs():
    report = sweep([], [2], [1])
    assert report.results == [] and report.errors == []
    assert sweep_csv(report) == "p,lambda,m,alpha,min_size,min_over_p,exact,witness\n"


def test_sweep_table_and_errors():
    report = sweep([5, 7], [2], [2, 3, 6])
    # m=6 > p=5 is recorded as an error, sweep continues
    assert any(e["p"] == 5 and e["m"] == 6 for e in report.errors)
    assert len(report.results) == 5
    csv_text = sweep_csv(report)
    assert csv_text.splitlines()[1] == '5,2,2,2/5,4,4/5,true,"p=5;{0,1}"'
    assert csv_text.endswith("\n")


def test_sweep_m_rule_callable():
    report = sweep([5, 7], [2], lambda p: [(p - 1) // 2])
    assert [(t.p, t.m) for t in report.tasks] == [(5, 2), (7, 3)]


def test_sweep_cache_roundtrip(tmp_path):
    args = ([5, 7], [2, 3], [1, 2])
    first = sweep(*args, cache_dir=tmp_path)
    assert first.computed == 8 and first.cached == 0
    second = sweep(*args, cache_dir=tmp_path)
    assert second.computed == 0 and second.cached == 8
    assert sweep_csv(first) == sweep_csv(second)
    assert [r for r in first.results] == [r for r in second.results]
