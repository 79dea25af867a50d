from dataclasses import replace

import numpy as np
import pytest

from demand.model import predict_mean_one_step
from ensemble.analysis import (
    cumulative_demand,
    empirical_quantiles,
    exceedance_probability,
    quantile_grid,
    rank_correlation,
)
from ensemble.export import (
    cumsum_histogram,
    ensemble_summary,
    fan_chart_frame,
    read_ensemble_csv,
    write_ensemble_csv,
)
from ensemble.rearrange import comonotone, countermonotone, rearrange
from ensemble.simulate import simulate
from errors import (
    ConfigurationError,
    DataError,
    DimensionMismatch,
    EmptyGrid,
    UnfittedModel,
    UnknownMode,
    WindowExceedsHorizon,
)
from features.spec import FeatureSpec
from models import DEPENDENCE_MODES, EnsembleForecast


def _ens(paths, origin=0, seed=0):
    return EnsembleForecast(np.asarray(paths, dtype=float), origin, seed)


def _noise_free(model):
    return replace(model, variance=replace(model.variance, innovations=np.zeros(1)))


# ---------- simulation ----------
def test_same_seed_same_paths(fitted_demand):
    series, ctx, model = fitted_demand
    a = simulate(model, series, ctx, 24, 2, seed=42)
    b = simulate(model, series, ctx, 24, 2, seed=42)
    np.testing.assert_array_equal(a.paths, b.paths)
    assert a.origin == len(series)
    assert a.paths.shape == (2, 24)


def test_other_seed_other_paths(fitted_demand):
    series, ctx, model = fitted_demand
    a = simulate(model, series, ctx, 24, 5, seed=1)
    b = simulate(model, series, ctx, 24, 5, seed=2)
    assert not np.array_equal(a.paths, b.paths)


def test_paths_do_not_depend_on_ensemble_size(fitted_demand):
    series, ctx, model = fitted_demand
    small = simulate(model, series, ctx, 12, 3, seed=5)
    large = simulate(model, series, ctx, 12, 8, seed=5)
    np.testing.assert_allclose(small.paths, large.paths[:3], rtol=1e-12)


def test_zero_innovations_follow_the_mean_recursion(fitted_demand):
    series, ctx, model = fitted_demand
    model = _noise_free(model)
    H = 30
    ens = simulate(model, series, ctx, H, 4, seed=0)
    np.testing.assert_allclose(ens.paths, np.broadcast_to(ens.paths[0], ens.paths.shape), rtol=1e-12)

    values = np.concatenate([series.values, np.full(H, np.nan)])
    origin = len(series)
    for h in range(H):
        values[origin + h] = predict_mean_one_step(model, values, ctx, origin + h)
    np.testing.assert_allclose(ens.paths[0], values[origin:], rtol=1e-10)


def test_floor_at_zero(fitted_demand):
    series, ctx, model = fitted_demand
    low = replace(series, values=series.values - 500.0)
    ens = simulate(model, low, ctx, 24, 10, seed=3, floor_at_zero=True)
    assert (ens.paths >= 0).all()


def test_floored_demand_drives_the_variance_lags(make_series, make_ctx, manual_model):
    spec_mean = FeatureSpec("mean", ("const", "lags"), (1,))
    spec_var = FeatureSpec("variance", ("const", "lags"), (1,))
    # mu = 20 - Y[t-1], sigma^2 = 1 + e[t-1]^2, every draw is -1
    model = manual_model(spec_mean, [0.0, -1.0], 20.0, spec_var, [0.0, 1.0], 1.0, [-1.0])
    history = make_series(np.full(30, 30.0))
    ens = simulate(model, history, make_ctx(32), 2, 3, seed=0, floor_at_zero=True)
    np.testing.assert_array_equal(ens.paths[:, 0], 0.0)
    # floored residual is 0 - (-10), so sigma^2 = 101 at the second hour
    np.testing.assert_allclose(ens.paths[:, 1], 20.0 - np.sqrt(101.0))


def test_ar1_paths_match_the_conditional_moments(make_series, make_ctx, manual_model):
    z = np.random.default_rng(17).standard_normal(4000)
    pool = (z - z.mean()) / z.std()
    spec_mean = FeatureSpec("mean", ("const", "lags"), (1,))
    spec_var = FeatureSpec("variance", ("const", "lags"), (1,))
    model = manual_model(spec_mean, [0.0, 0.5], 0.0, spec_var, [0.0, 0.0], 1.0, pool)
    ens = simulate(model, make_series(np.full(10, 10.0)), make_ctx(12), 2, 10_000, seed=4)
    assert ens.paths[:, 0].mean() == pytest.approx(5.0, abs=0.05)
    assert ens.paths[:, 1].mean() == pytest.approx(0.5 ** 2 * 10.0, abs=0.05)
    assert ens.paths[:, 1].var() == pytest.approx(1.0 + 0.5 ** 2, abs=0.08)


def test_simulate_contracts(fitted_demand):
    series, ctx, model = fitted_demand
    with pytest.raises(UnfittedModel):
        simulate(None, series, ctx, 24, 2, seed=0)
    with pytest.raises(DimensionMismatch):
        simulate(model, series, ctx, 49, 2, seed=0)
    with pytest.raises(DimensionMismatch):
        simulate(model, series, ctx, 24, 0, seed=0)


# ---------- dependence modes ----------
def test_comonotone_links_ranks():
    np.testing.assert_array_equal(comonotone(np.array([[1, 4], [3, 2]])), [[1, 2], [3, 4]])


def test_countermonotone_alternates():
    np.testing.assert_array_equal(countermonotone(np.array([[1, 2], [3, 4]])), [[1, 4], [3, 2]])


@pytest.mark.parametrize("mode", DEPENDENCE_MODES)
def test_rearrangement_keeps_marginals(mode):
    paths = np.random.default_rng(0).normal(size=(50, 6))
    out = rearrange(_ens(paths, origin=10, seed=3), mode)
    assert out.dependence_mode == mode
    np.testing.assert_array_equal(np.sort(out.paths, axis=0), np.sort(paths, axis=0))


def test_independent_is_seeded():
    paths = np.random.default_rng(1).normal(size=(30, 4))
    a = rearrange(_ens(paths, seed=7), "independent")
    b = rearrange(_ens(paths, seed=7), "independent")
    np.testing.assert_array_equal(a.paths, b.paths)
    assert not np.array_equal(a.paths, paths)


def test_unknown_mode():
    with pytest.raises(UnknownMode):
        rearrange(_ens([[1.0]]), "gaussian")


def test_comonotone_paths_never_cross(fitted_demand):
    series, ctx, model = fitted_demand
    ens = rearrange(simulate(model, series, ctx, 24, 200, seed=5), "comonotone")
    assert np.all(np.diff(ens.paths, axis=0) >= 0)


def test_comonotone_maximises_the_spread_of_daily_totals(fitted_demand):
    series, ctx, model = fitted_demand
    ens = simulate(model, series, ctx, 24, 200, seed=5)
    spread = {mode: rearrange(ens, mode).paths.sum(axis=1).var()
              for mode in ("standard", "comonotone", "independent")}
    assert spread["comonotone"] >= spread["standard"]
    assert spread["comonotone"] >= spread["independent"]


def test_independent_linking_thins_the_upper_tail(fitted_demand):
    series, ctx, model = fitted_demand
    ens = simulate(model, series, ctx, 24, 200, seed=5)
    co = rearrange(ens, "comonotone")
    capacity = float(np.quantile(cumulative_demand(co, 24), 0.9))
    assert exceedance_probability(rearrange(ens, "independent"), capacity, 24) \
        <= exceedance_probability(co, capacity, 24)


def test_comonotone_rank_correlation_is_one():
    paths = np.random.default_rng(2).normal(size=(40, 5))
    rho = rank_correlation(rearrange(_ens(paths), "comonotone").paths)
    np.testing.assert_allclose(rho, 1.0)


def test_countermonotone_neighbours_anticorrelate():
    paths = np.random.default_rng(3).normal(size=(40, 3))
    rho = rank_correlation(countermonotone(paths))
    assert rho[0, 1] == pytest.approx(-1.0)
    assert rho[0, 2] == pytest.approx(1.0)


def test_rank_correlation_small_horizons():
    assert rank_correlation(np.ones((5, 1))).shape == (1, 1)
    rho = rank_correlation(np.array([[1.0, 2.0], [2.0, 3.0], [3.0, 5.0]]))
    np.testing.assert_allclose(rho, [[1.0, 1.0], [1.0, 1.0]])


# ---------- storage and quantiles ----------
def test_exceedance_probability():
    positive = _ens([[1.0, 2.0], [3.0, 4.0]])
    assert exceedance_probability(positive, 0.0, 2) == 1.0
    assert exceedance_probability(positive, np.inf, 2) == 0.0
    assert exceedance_probability(_ens([[4.0, 6.0], [10.0, 20.0]]), 20.0, 2) == 0.5


def test_window_beyond_horizon():
    with pytest.raises(WindowExceedsHorizon):
        cumulative_demand(_ens([[1.0, 2.0]]), 3)


def test_single_member_quantiles():
    q = empirical_quantiles(_ens([[3.0, 7.0]]), quantile_grid(9))
    assert q.shape == (9, 2)
    assert (q[:, 0] == 3.0).all() and (q[:, 1] == 7.0).all()


def test_median_uses_lower_order_statistic():
    q = empirical_quantiles(np.array([[1.0], [2.0], [3.0], [4.0]]), [0.5])
    assert q[0, 0] == 2.0


def test_quantile_grid():
    grid = quantile_grid()
    assert grid.size == 99
    assert grid[0] == pytest.approx(0.01) and grid[-1] == pytest.approx(0.99)
    with pytest.raises(EmptyGrid):
        quantile_grid(0)
    with pytest.raises(ConfigurationError):
        empirical_quantiles(_ens([[1.0]]), [0.5, 0.4])


# ---------- export ----------
def test_ensemble_csv_round_trip(tmp_path):
    ens = _ens(np.random.default_rng(4).normal(size=(3, 5)), origin=17)
    path = tmp_path / "ens.csv"
    write_ensemble_csv(ens, path)
    back = read_ensemble_csv(path)
    assert back.origin == 17
    np.testing.assert_array_equal(back.paths, ens.paths)


def test_read_ensemble_requires_long_format(tmp_path):
    path = tmp_path / "wide.csv"
    path.write_text("h1,h2\n1,2\n")
    with pytest.raises(DataError):
        read_ensemble_csv(path)


def test_fan_chart_and_summary():
    ens = _ens(np.arange(20.0).reshape(10, 2))
    fan = fan_chart_frame(ens)
    assert list(fan.columns[:2]) == ["h", "mean"]
    assert fan.shape == (2, 2 + 7)
    assert (fan["q0.05"] <= fan["q0.5"]).all() and (fan["q0.5"] <= fan["q0.95"]).all()
    summary = ensemble_summary(ens)
    assert summary["M"] == 10 and summary["H"] == 2
    assert set(summary["quantiles"]) == {"0.05", "0.1", "0.25", "0.5", "0.75", "0.9", "0.95"}


def test_cumsum_histogram_integrates_to_one():
    ens = _ens(np.random.default_rng(5).normal(100, 10, size=(200, 24)))
    hist = cumsum_histogram(ens, 24, bins=20)
    widths = hist["bin_right"] - hist["bin_left"]
    assert float((hist["density"] * widths).sum()) == pytest.approx(1.0)


@pytest.mark.slow
def test_joint_structure_shows_only_in_the_energy_score():
    from scoring.report import score_ensemble

    rng = np.random.default_rng(21)
    grid = quantile_grid(19)
    H, M, a = 24, 100, 0.8
    es = {mode: [] for mode in DEPENDENCE_MODES}
    for rep in range(500):
        def draw(size):
            common = rng.standard_normal((*size, 1))
            return a * common + np.sqrt(1 - a * a) * rng.standard_normal((*size, H))

        truth = draw((1,))[0]
        ens = EnsembleForecast(draw((M,)), rep, 1)
        rows = {mode: score_ensemble(rearrange(ens, mode).paths, truth, grid, origin=rep)
                for mode in DEPENDENCE_MODES}
        for mode, s in rows.items():
            es[mode].append(s.es)
            for metric in ("pb", "mae", "rmse", "ns"):
                assert getattr(s, metric) == pytest.approx(
                    getattr(rows["standard"], metric), rel=1e-12, abs=1e-12)
    assert np.mean(es["standard"]) < np.mean(es["independent"])
