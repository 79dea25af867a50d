import logging

import numpy as np
import pytest
from scipy.linalg import solve_toeplitz
from statsmodels.tsa.stattools import acovf

from benchmarks.naive import NaiveModel, day_types, fit_naive, forecast_naive, mrw_lag
from benchmarks.registry import make_forecaster, registered_models
from benchmarks.seasonal_ar import (
    SeasonalARModel,
    fit_seasonal_ar,
    forecast_seasonal_ar,
    levinson_durbin,
)
from errors import (
    ConfigurationError,
    EmptyBucket,
    MissingInWindow,
    SeriesTooShort,
    UnfittedModel,
    UnknownModel,
)
from series.calendar import default_calendar
from series.synthetic import SyntheticProcess, simulate_synthetic

WEEK = 168


# ---------- naive ----------
def test_naive_mean_averages_each_hour(make_series, make_ctx):
    series = make_series(np.r_[np.full(24, 10.0), np.full(24, 20.0)])
    model = fit_naive(series, make_ctx(48), "mean")
    np.testing.assert_array_equal(model.profile, np.full(24, 15.0))
    assert set(np.abs(model.residuals)) == {5.0}
    assert model.parameter_count == 24


def test_naive_fm_on_constant_series(make_series, make_ctx, caplog):
    series = make_series(np.full(2 * WEEK, 5.0))
    ctx = make_ctx(2 * WEEK + 24)
    with caplog.at_level(logging.WARNING, logger="benchmarks.naive"):
        model = fit_naive(series, ctx, "fm")
    assert "Sunday profile" in caplog.text
    ens = forecast_naive(model, series, ctx, 24, 3, seed=1)
    np.testing.assert_array_equal(ens.paths, 5.0)


def test_naive_fm_needs_every_day_type(make_series, make_ctx):
    with pytest.raises(EmptyBucket):
        fit_naive(make_series(np.ones(48)), make_ctx(48), "fm")


def test_naive_rejects_gaps(make_series, make_ctx):
    values = np.ones(48)
    values[3] = np.nan
    with pytest.raises(MissingInWindow):
        fit_naive(make_series(values), make_ctx(48), "mean")
    with pytest.raises(ConfigurationError):
        fit_naive(make_series(np.ones(48)), make_ctx(48), "median")


def test_day_types_put_holidays_first(make_ctx):
    ctx = make_ctx(24 * 7, start="2015-12-21", calendar=default_calendar())
    # Mon 21st .. Sun 27th; the 25th and 26th are holidays
    types = day_types(ctx, np.arange(0, 24 * 7, 24))
    np.testing.assert_array_equal(types, [0, 1, 1, 1, 5, 5, 4])


def test_mrw_lags(make_ctx):
    ctx = make_ctx(WEEK)
    assert [mrw_lag(ctx, 24 * d) for d in range(7)] == [168, 24, 24, 24, 24, 168, 168]


@pytest.mark.parametrize("origin, expected", [
    # Monday: a week back, then Tuesday copies the simulated Monday
    (2 * WEEK, np.r_[np.arange(168, 192), np.arange(168, 192)]),
    # Saturday and Sunday: a week back
    (2 * WEEK + 120, np.arange(288, 336)),
])
def test_mrw_zero_noise_forecast(make_series, make_ctx, origin, expected):
    history = make_series(np.arange(float(origin)))
    model = NaiveModel("mrw", np.empty(0), np.zeros(1))
    ens = forecast_naive(model, history, make_ctx(origin + 48), 48, 2, seed=0)
    np.testing.assert_array_equal(ens.paths[0], expected)
    assert model.parameter_count == 0


def test_mrw_needs_a_week(make_series, make_ctx):
    with pytest.raises(SeriesTooShort):
        fit_naive(make_series(np.ones(WEEK)), make_ctx(WEEK), "mrw")


# ---------- seasonal AR ----------
def _ar_series(seed, length=5000, **ar):
    return simulate_synthetic(SyntheticProcess(length=length, **ar), seed)


def test_ar1_is_recovered(make_ctx):
    series = _ar_series(3, ar={1: 0.6})
    model = fit_seasonal_ar(series, make_ctx(len(series)), "D", p_max=10)
    assert 1 <= model.p <= 3
    assert 0.55 <= model.phi[0] <= 0.65
    assert model.parameter_count == 24 + 1 + model.p


@pytest.mark.slow
def test_white_noise_selects_order_zero(make_ctx):
    orders = []
    for seed in range(100):
        series = _ar_series(200 + seed, length=2000)
        orders.append(fit_seasonal_ar(series, make_ctx(len(series)), "D", p_max=10).p)
    assert sum(p == 0 for p in orders) >= 85


def _manual_ar(phi, profile=np.zeros(24), level=0.0):
    phi = np.asarray(phi, dtype=float)
    return SeasonalARModel("D", np.asarray(profile, dtype=float), level, phi, 1.0,
                           np.zeros(1), np.zeros(phi.size + 1))


def test_ar_zero_noise_without_memory_is_the_profile(make_series, make_ctx):
    model = _manual_ar([], profile=np.arange(24.0), level=1.0)
    history = make_series(np.ones(48))
    ens = forecast_seasonal_ar(model, history, make_ctx(72), 24, 3, seed=0)
    np.testing.assert_array_equal(ens.paths, np.tile(np.arange(24.0) + 1.0, (3, 1)))


def test_ar_unit_root_continues_flat(make_series, make_ctx):
    history = make_series(np.r_[np.zeros(47), 7.5])
    ens = forecast_seasonal_ar(_manual_ar([1.0]), history, make_ctx(72), 24, 2, seed=0)
    np.testing.assert_array_equal(ens.paths, 7.5)


def test_ar_forecast_is_seeded(make_ctx):
    series = _ar_series(4, length=24 * 7 * 4, ar={1: 0.5}, daily_amplitude=5.0)
    ctx = make_ctx(len(series) + 24)
    model = fit_seasonal_ar(series, ctx, "W", p_max=5)
    a = forecast_seasonal_ar(model, series, ctx, 24, 10, seed=9)
    b = forecast_seasonal_ar(model, series, ctx, 24, 10, seed=9)
    np.testing.assert_array_equal(a.paths, b.paths)


def test_ar_needs_twice_the_order(make_series, make_ctx):
    with pytest.raises(SeriesTooShort):
        fit_seasonal_ar(make_series(np.random.default_rng(0).normal(size=150)),
                        make_ctx(150), "D", p_max=100)


def test_levinson_durbin_solves_yule_walker():
    x = _ar_series(5, length=3000, ar={1: 0.4, 2: -0.2}).values
    acov = acovf(x - x.mean(), adjusted=False, demean=False, fft=True, nlag=5)
    phi, sigma2 = levinson_durbin(acov, 5)
    np.testing.assert_allclose(phi, solve_toeplitz(acov[:5], acov[1:6]), atol=1e-10)
    assert np.all(np.diff(sigma2) <= 0)
    assert sigma2[5] == pytest.approx(acov[0] - phi @ acov[1:6])


# ---------- registry ----------
def test_registered_models():
    assert set(registered_models()) == {
        "arx_arch_lasso", "naive_mean", "naive_fm", "naive_mrw", "ar_d", "ar_w",
    }
    with pytest.raises(UnknownModel):
        make_forecaster("prophet")


def test_forecaster_surface(make_series, make_ctx):
    series = make_series(np.tile(np.arange(24.0), 3))
    ctx = make_ctx(96)
    forecaster = make_forecaster("naive_mean")
    with pytest.raises(UnfittedModel):
        forecaster.forecast(series, ctx, 24, 2, seed=0)
    ens = forecaster.fit(series, ctx).forecast(series, ctx, 24, 2, seed=0)
    assert ens.model == "naive_mean"
    assert ens.origin == 72
    np.testing.assert_array_equal(ens.paths[1], np.arange(24.0))


def test_bad_settings():
    with pytest.raises(ConfigurationError):
        make_forecaster("ar_w", {"AR_P_MAX": "many"})
    with pytest.raises(ConfigurationError):
        make_forecaster("arx_arch_lasso", {"VARIANCE_TARGET": "cubed"})
    assert make_forecaster("ar_d", {"AR_P_MAX": "12"}).p_max == 12
