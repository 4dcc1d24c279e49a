import math
import random

import pytest

import tradesim


def test_config_and_validation():
    c = tradesim.SimConfig(n_agents=50, invest_fraction=0.3, seed=9)
    assert c.n_agents == 50
    assert c.to_dict()["invest_fraction"] == "0.29999999999999999"
    c.invest_fraction = 1.5
    with pytest.raises(tradesim.ConfigError):
        c.validate()
    with pytest.raises(tradesim.ConfigError):
        tradesim.SimConfig(no_such_key=1)


def test_market_conserves_and_is_deterministic():
    c = tradesim.SimConfig(n_agents=30, seed=4)
    a, b = tradesim.Market(c), tradesim.Market(c)
    s0, m0 = a.total_stock(), a.total_money()
    rec = a.step()
    assert rec["step"] == 1 and 0.0 <= rec["q"] <= 1.0
    a.advance(999)
    b.advance(1000)
    assert a.price == b.price and a.stocks() == b.stocks()
    assert abs(a.total_stock() / s0 - 1) < 1e-9
    assert abs(a.total_money() / m0 - 1) < 1e-9


def test_save_and_load(tmp_path):
    c = tradesim.SimConfig(n_agents=10, seed=2)
    m = tradesim.Market(c)
    m.advance(100)
    m.save(tmp_path / "m.snap")
    r = tradesim.Market.load(tmp_path / "m.snap")
    m.advance(100)
    r.advance(100)
    assert r.step_index == 200 and r.price == m.price and r.money() == m.money()
    (tmp_path / "bad.snap").write_text("tradesim-snapshot 1\n")
    with pytest.raises(tradesim.SnapshotError):
        tradesim.Market.load(tmp_path / "bad.snap")


def test_run_writes_artifacts(tmp_path):
    c = tradesim.SimConfig(n_agents=20, n_steps=300, seed=1)
    out = tradesim.run(c, "every:100", tmp_path)
    assert len(out["price"]) == 300
    assert out["snapshot_steps"] == [0, 100, 200, 300]
    assert out["max_money_drift"] < 1e-9
    assert (tmp_path / "steps.csv").read_text().startswith("step,price,supply,demand,q,")


def test_price_rules():
    assert tradesim.factor_bounded(3.0, 1.0) == pytest.approx(-2.0 / 7.0)
    assert tradesim.factor_ratio(4.0, 1.0, 2.0) == 0.5
    assert tradesim.acceptance_probability(2.0, 1.0) == pytest.approx(2.0 / 3.0)


def test_analysis():
    rng = random.Random(3)
    pareto = [(1.0 - rng.random()) ** (-1.0 / 1.5) for _ in range(50000)]
    fit = tradesim.fit_power_law_tail(pareto, xmin=1.0)
    assert fit["exponent"] == pytest.approx(-2.5, abs=0.05)
    bins = tradesim.log_binned_histogram([1.0, 10.0, 100.0], 1)
    assert [b[3] for b in bins] == [1, 1, 1]
    assert tradesim.returns([100.0, 110.0]) == [math.log(1.1)]
    slope, _, _ = tradesim.tau_scaling([(n, 0.5, (n / 0.5) ** 2) for n in (50, 100, 200)])
    assert slope == pytest.approx(2.0)
    with pytest.raises(tradesim.AnalysisError):
        tradesim.fit_power_law_tail([1.0] * 5)
    with pytest.raises(tradesim.AnalysisError):
        tradesim.detect_crossover([2.0] * 1000, 10)


def test_oracle():
    assert tradesim.kernel_cdf(10.0, 100.0, 2.0, 1.0, 0.5, 10.0) == pytest.approx(0.5)
    assert tradesim.oracle_check(specs=10, samples=20000)["pass"]
    assert not tradesim.oracle_check(specs=10, samples=20000, q_bias=0.2)["pass"]
