from dataclasses import replace

import numpy as np
import pytest

from demand.model import DemandModel, fit_mean, fit_variance
from ensemble.analysis import quantile_grid
from ensemble.simulate import simulate
from errors import (
    DegenerateDifferential,
    DimensionMismatch,
    InsufficientData,
    NonMonotoneQuantiles,
    ZeroVarianceActuals,
)
from features.spec import FeatureSpec, LagSets
from lasso.solver import LassoConfig
from models import HolidayCalendar
from scoring.dm import dm_test
from scoring.point import mae, ns, point_forecasts, rmse
from scoring.probabilistic import (
    crps_ensemble,
    energy_score,
    gaussian_crps,
    interval_coverage,
    pinball,
)
from scoring.report import build_report, score_ensemble
from series.synthetic import SyntheticProcess, simulate_synthetic


# ---------- point ----------
def test_point_metrics():
    y, f = [1.0, 2.0, 3.0], [1.0, 2.0, 4.0]
    assert mae(y, f) == pytest.approx(1 / 3)
    assert rmse(y, f) == pytest.approx(np.sqrt(1 / 3))
    assert ns(y, f) == pytest.approx(0.5)
    assert ns(y, y) == 1.0


def test_point_metric_contracts():
    with pytest.raises(ZeroVarianceActuals):
        ns([2.0, 2.0], [1.0, 3.0])
    with pytest.raises(DimensionMismatch):
        mae([1.0, 2.0], [1.0])


def test_point_forecasts_are_median_and_mean():
    median, mean = point_forecasts(np.array([[0.0, 1.0], [1.0, 1.0], [5.0, 1.0]]))
    np.testing.assert_array_equal(median, [1.0, 1.0])
    np.testing.assert_array_equal(mean, [2.0, 1.0])


# ---------- pinball ----------
def test_median_pinball_is_half_the_mae():
    y = np.array([1.0, 4.0, -2.0])
    f = np.array([0.0, 5.0, 1.0])
    total, _, _ = pinball(y, f[None, :], [0.5])
    assert total == pytest.approx(0.5 * mae(y, f))


def test_perfect_quantiles_cost_nothing():
    grid = quantile_grid(9)
    total, per_tau, per_h = pinball([3.0, 4.0], np.tile([3.0, 4.0], (9, 1)), grid)
    assert total == 0.0
    assert not per_tau.any() and not per_h.any()


def test_pinball_under_forecast():
    total, _, _ = pinball([2.0], [[0.0]], [0.9])
    assert total == pytest.approx(1.8)


def test_pinball_warns_on_crossing_quantiles():
    with pytest.warns(NonMonotoneQuantiles):
        pinball([0.0], [[1.0], [0.0]], [0.25, 0.75])


# ---------- energy score and CRPS ----------
def test_energy_score_of_exact_ensemble():
    y = np.array([1.0, 2.0, 3.0])
    assert energy_score(np.tile(y, (4, 1)), y) == 0.0


def test_energy_score_single_member_is_the_distance():
    assert energy_score([[3.0, 4.0]], [0.0, 0.0]) == pytest.approx(5.0)


def test_energy_score_two_point_ensemble():
    assert energy_score([[0.0], [2.0]], [1.0]) == pytest.approx(0.5)


def test_energy_score_reduces_to_crps():
    x = np.random.default_rng(0).normal(size=50)
    assert energy_score(x[:, None], [0.3]) == pytest.approx(crps_ensemble(x, 0.3))


def test_energy_score_with_second_ensemble():
    first = np.array([[0.0], [2.0]])
    # a disjoint copy of the same ensemble gives the V-statistic spread
    assert energy_score(first, [1.0], second=first.copy()) == pytest.approx(0.5)
    assert energy_score(first, [1.0], second=[[1.0]]) == pytest.approx(0.5)


def test_energy_score_subsampled_spread():
    X = np.random.default_rng(1).normal(size=(400, 4))
    full = energy_score(X, np.zeros(4))
    sub = energy_score(X, np.zeros(4), max_members=200, seed=3)
    assert sub == pytest.approx(full, abs=0.1)
    assert sub == energy_score(X, np.zeros(4), max_members=200, seed=3)


def test_energy_score_horizon_mismatch():
    with pytest.raises(DimensionMismatch):
        energy_score(np.zeros((3, 2)), np.zeros(3))


def test_gaussian_crps_at_the_mean():
    assert gaussian_crps(0.0, 1.0, 0.0) == pytest.approx(0.23369497, abs=1e-8)


def test_large_ensemble_crps_approaches_gaussian():
    x = np.random.default_rng(2).standard_normal(3000)
    assert crps_ensemble(x, 0.5) == pytest.approx(gaussian_crps(0.0, 1.0, 0.5), abs=0.04)


def test_interval_coverage():
    paths = np.arange(1.0, 11.0)[:, None] * np.ones((1, 3))
    covered = interval_coverage(paths, [5.0, 0.0, 11.0], level=0.8)
    np.testing.assert_array_equal(covered, [True, False, False])


# ---------- Diebold-Mariano ----------
def test_dm_degenerate_differential():
    loss = np.arange(20.0)
    with pytest.raises(DegenerateDifferential):
        dm_test(loss, loss)


def test_dm_needs_ten_losses():
    with pytest.raises(InsufficientData):
        dm_test(np.ones(9), np.zeros(9))


def test_dm_detects_a_shift():
    rng = np.random.default_rng(3)
    result = dm_test(rng.normal(0.5, 1.0, 400), np.zeros(400))
    assert 7.0 < result.statistic < 13.0
    assert result.lag == 7
    assert result.b_better and not result.a_better
    assert result.p_less + result.p_greater == pytest.approx(1.0)


def test_dm_lag_at_a_perfect_cube():
    rng = np.random.default_rng(4)
    assert dm_test(rng.normal(size=1000), rng.normal(size=1000)).lag == 10


def test_dm_size_under_the_null():
    rejected = 0
    for seed in range(100):
        rng = np.random.default_rng(1000 + seed)
        result = dm_test(rng.normal(size=100), rng.normal(size=100))
        rejected += result.a_better or result.b_better
    assert rejected <= 25


# ---------- reports ----------
def _scores(n_origins, models=("good", "bad"), H=6, M=40):
    rng = np.random.default_rng(5)
    grid = quantile_grid(9)
    out = []
    for origin in range(n_origins):
        y = rng.normal(size=H)
        for shift, model in enumerate(models):
            paths = y + 2.0 * shift + rng.normal(size=(M, H))
            out.append(score_ensemble(paths, y, grid, origin=origin, model=model,
                                      parameters=3 * shift))
    return out, grid


def test_score_ensemble_row():
    s = score_ensemble(np.ones((5, 3)), [1.0, 1.0, 1.0], quantile_grid(9), origin=4, model="x")
    row = s.row()
    assert row["origin"] == 4 and row["model"] == "x"
    assert row["es"] == 0.0 and row["pb"] == 0.0 and row["mae"] == 0.0
    assert np.isnan(row["ns"])
    assert row["coverage"] == 1.0


def test_build_report_tables():
    scores, grid = _scores(12)
    report = build_report(scores, ["bad", "good"], grid, reference="bad")

    assert list(report.per_origin["model"][:2]) == ["bad", "good"]
    assert len(report.per_origin) == 24
    assert list(report.aggregate["model"]) == ["bad", "good"]
    assert report.per_horizon.shape == (2 * 6, 6)
    assert report.per_quantile.shape == (2 * 9, 3)

    summary = report.summary.set_index("model")
    assert summary.loc["bad", "es_improvement_pct"] == 0.0
    assert summary.loc["good", "es_improvement_pct"] > 0
    assert summary.loc["good", "pb_improvement_pct"] > 0
    assert summary.loc["good", "parameters"] == 0
    assert summary.loc["bad", "parameters"] == 3

    pair = report.dm["pairs"]["good"]["bad"]
    assert pair["p_less"] < 0.05


def test_dm_skipped_with_few_origins():
    scores, grid = _scores(5)
    report = build_report(scores, ["good", "bad"], grid, reference="good")
    assert report.dm["pairs"]["good"]["bad"] is None


@pytest.mark.slow
def test_calibrated_ensembles_cover_eighty_percent(make_ctx):
    proc = SyntheticProcess(length=6000, level=50.0, ar={1: 0.6}, arch_omega=1.0,
                            arch={1: 0.3})
    series = simulate_synthetic(proc, 8)
    ctx = make_ctx(len(series))
    cfg = LassoConfig(n_lambdas=30)
    mean = fit_mean(series, ctx, FeatureSpec("mean", ("const", "lags"), (1,)), cfg, 0, 4000)
    variance = fit_variance(mean, series, ctx, FeatureSpec("variance", ("const", "lags"), (1,)),
                            cfg)
    model = DemandModel(mean, variance, LagSets(), HolidayCalendar())

    hits = []
    for origin in range(4000, 5000):
        history = replace(series, values=series.values[:origin])
        ens = simulate(model, history, ctx, 1, 200, seed=origin)
        hits.append(interval_coverage(ens.paths, series.values[origin:origin + 1])[0])
    assert 0.76 <= np.mean(hits) <= 0.84


@pytest.mark.slow
def test_dm_one_sided_size():
    rejected = 0
    for seed in range(1000):
        rng = np.random.default_rng(5000 + seed)
        rejected += dm_test(rng.normal(size=1000), rng.normal(size=1000)).a_better
    assert 0.03 <= rejected / 1000 <= 0.07
