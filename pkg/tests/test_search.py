import json
from pathlib import Path

import numpy as np
import pytest

from hankel3.bounds import PRIOR_BOUNDS, TARGET_BOUNDS
from hankel3.classes import ClassId, eval_hankel3
from hankel3.lemmas import check_carlson
from hankel3.search import SearchConfig, gap_report, search

GOLDEN = Path(__file__).parent / "golden"


def test_budget_one_is_the_zero_function():
    r = search(SearchConfig(ClassId.STARLIKE, budget=1, seed=0))
    assert r.best_value == 0
    assert r.witness.schur_params == (0, 0, 0, 0)


@pytest.mark.parametrize(
    "kwargs",
    [dict(budget=0), dict(budget=-3), dict(step_scale=0), dict(step_scale=1.5), dict(refine_iters=-1)],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        SearchConfig(ClassId.LUNE, **kwargs)


def test_budget_accounting():
    cfg = SearchConfig(ClassId.LUNE, budget=150, refine_iters=200)
    assert cfg.refine_evaluations == 149 and cfg.sample_evaluations == 1
    cfg = SearchConfig(ClassId.LUNE, budget=10_000, refine_iters=200)
    assert cfg.sample_evaluations == 9_800
    r = search(cfg)
    assert r.history[-1][0] <= cfg.budget


def test_reproducible():
    cfg = SearchConfig("exponential", budget=5_000, seed=42)
    a, b = search(cfg), search(cfg)
    assert a.to_dict() == b.to_dict()
    assert search(SearchConfig("exponential", budget=5_000, seed=43)).best_value != a.best_value


@pytest.mark.parametrize("cid", list(ClassId))
def test_invariants(cid):
    r = search(SearchConfig(cid, budget=20_000, seed=1))
    values = [v for _, v in r.history]
    assert values == sorted(values)
    assert r.best_value == values[-1]
    assert r.best_value <= r.class_upper_bound
    assert check_carlson(r.witness, 1e-12)
    assert abs(abs(eval_hankel3(cid, r.witness.as_array())) - r.best_value) <= 1e-12


def test_starlike_search_approaches_four_ninths():
    r = search(SearchConfig(ClassId.STARLIKE, budget=50_000, seed=0))
    assert 0.44 < r.best_value <= 4 / 9 + 1e-12


@pytest.mark.parametrize("cls", ["symmetric", "exponential"])
def test_golden(cls):
    golden = json.loads((GOLDEN / f"search_{cls}.json").read_text())
    cfg = golden["result"]["config"]
    r = search(SearchConfig(cfg["classId"], cfg["budget"], cfg["refineIters"], cfg["seed"], cfg["stepScale"]))
    assert r.best_value == pytest.approx(golden["result"]["bestValue"], abs=1e-12)
    assert r.best_value <= TARGET_BOUNDS[ClassId(cls)]
    assert golden["gap"]["lower"] <= golden["gap"]["upper"]


def _results(budget=2_000):
    return [search(SearchConfig(c, budget=budget, seed=0)) for c in ClassId]


def test_gap_report():
    rows = {r.class_id: r for r in gap_report(_results())}
    assert rows[ClassId.SYMMETRIC_POINTS].prior == 5 / 2
    assert rows[ClassId.EXPONENTIAL].prior == 0.50047781
    assert rows[ClassId.STARLIKE].prior is None and rows[ClassId.LUNE].prior is None
    for row in rows.values():
        assert row.lower <= row.upper
        assert row.gap == pytest.approx(row.upper - row.lower)
        assert 0 <= row.ratio <= 1
    assert PRIOR_BOUNDS[ClassId.SYMMETRIC_POINTS] > rows[ClassId.SYMMETRIC_POINTS].upper


def test_gap_report_missing_class():
    with pytest.raises(ValueError, match="lune"):
        gap_report(_results(10)[:3])


def test_gap_report_duplicate_class():
    r = _results(10)
    with pytest.raises(ValueError):
        gap_report(r + r[:1])


def test_gap_report_subset():
    r = _results(10)
    rows = gap_report(r, ["exponential"])
    assert [row.class_id for row in rows] == [ClassId.EXPONENTIAL]
