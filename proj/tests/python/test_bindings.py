import math

import pytest

import hetcache as hc


@pytest.fixture
def desk():
    return hc.SystemConfig(K=4, G=2, Nc=4, Nu=2, M=2.0)


def test_validation():
    assert hc.validate(hc.SystemConfig(4, 2, 4, 2, 2.0)) == []
    bad = hc.validate(hc.SystemConfig(4, 3, 4, 2, 2.0))
    assert any("divide" in msg for msg in bad)


def test_demand_count(desk):
    assert hc.demand_count(desk) == 524
    assert hc.demand_count(desk, "common") == 24
    assert hc.demand_count(desk, "unique") == 4


def test_endpoints_exact(desk):
    for cfg, k in [(hc.SystemConfig(4, 2, 4, 2, 0.0), 4.0),
                   (hc.SystemConfig(8, 2, 8, 4, 0.0), 8.0)]:
        assert hc.achievable(cfg)["value"] == k
        assert hc.converse(cfg)["value"] == k
    full = hc.SystemConfig(4, 2, 4, 2, 6.0)
    assert hc.achievable(full)["value"] == 0.0
    assert hc.converse(full)["value"] == 0.0


def test_bounds_sandwich(desk):
    ach = hc.achievable(desk)
    conv = hc.converse(desk)
    assert conv["convex"]
    assert conv["value"] == pytest.approx(1.2443063937629153, abs=1e-9)
    assert conv["value"] <= ach["value"] <= 2 * conv["value"]
    assert ach["value"] <= 2.25 + 1e-12


def test_load_formula(desk):
    assert hc.load_formula(desk, 0.5, 1) == pytest.approx(2.25, abs=1e-12)
    assert hc.load_formula(desk, 0.5, 0) == pytest.approx(1.5, abs=1e-12)


def test_sweep_rows(desk):
    rows = hc.sweep(desk, [0.0, 2.0, 6.0])
    assert [r["M"] for r in rows] == [0.0, 2.0, 6.0]
    assert rows[0]["gap"] == pytest.approx(1.0)
    assert rows[-1]["gap"] == pytest.approx(1.0)
    for r in rows:
        assert r["converse"] - 1e-9 <= r["achievable"] <= 2 * r["converse"] + 1e-9
    csv = hc.sweep_csv(desk, [0.0, 2.0, 6.0])
    assert csv.splitlines()[0] == "M,beta_ach,achievable,beta_conv,converse,gap"
    assert len(csv.splitlines()) == 4


def test_worst_case(desk):
    splits = hc.integer_splits(desk)
    assert (1, 1, 0.5) in splits
    wc = hc.worst_case(desk, 0.5)
    assert (wc["load_num"], wc["load_den"]) == (9, 4)
    assert wc["alpha"] == [1, 1]


def test_counting(desk):
    rep = hc.verify_counting(desk, 0.5)
    assert rep["pass"]
    assert rep["common_pairs"] == 24 * 24
    assert rep["first_mismatch"] == ""


def test_grid_contains_breakpoints(desk):
    grid = hc.m_grid(desk, 11)
    assert grid[0] == 0.0 and grid[-1] == 6.0
    assert any(math.isclose(m, 2.0) for m in grid)
