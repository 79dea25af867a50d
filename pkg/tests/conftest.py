import numpy as np
import pandas as pd
import pytest

from demand.model import DemandModel, MeanModel, VarianceModel, fit_demand_model
from features.spec import LagSets
from lasso.path import LassoFit
from lasso.solver import LassoConfig
from lasso.standardize import ScalingRecord
from models import HolidayCalendar, TimeSeries
from series.calendar import build_calendar
from series.ingest import export_csv
from series.synthetic import SyntheticProcess, simulate_synthetic

# 2015-01-05 is a Monday
MONDAY = "2015-01-05 00:00"

SMALL_LAGS = LagSets(I=(1, 2, 24), K=(1, 2), S=(1, 24))
FAST_LASSO = LassoConfig(n_lambdas=20, lambda_min_ratio=1e-3)


# =====================================================
# series and calendars
# =====================================================


@pytest.fixture
def make_series():
    def _gen(values, start=MONDAY):
        return TimeSeries(np.asarray(values, dtype=float), pd.Timestamp(start))

    return _gen


@pytest.fixture
def make_ctx():
    def _gen(length, start=MONDAY, calendar=None):
        calendar = HolidayCalendar() if calendar is None else calendar
        return build_calendar(start, length, calendar)

    return _gen


@pytest.fixture
def write_demand_csv(tmp_path):
    def _gen(rows, name="demand.csv"):
        path = tmp_path / name
        lines = ["timestamp,demand"] + [f"{ts},{v}" for ts, v in rows]
        path.write_text("\n".join(lines) + "\n")
        return path

    return _gen


# =====================================================
# synthetic demand
# =====================================================


def demand_process(length, **overrides) -> SyntheticProcess:
    """Positive daily-cycle demand with AR(1) and ARCH(1) noise."""
    params = dict(
        length=length,
        start=MONDAY,
        level=100.0,
        daily_amplitude=20.0,
        ar={1: 0.5},
        arch_omega=1.0,
        arch={1: 0.3},
        noise_scale=2.0,
    )
    params.update(overrides)
    return SyntheticProcess(**params)


@pytest.fixture
def synthetic_series():
    def _gen(length=24 * 7 * 6, seed=7, **overrides):
        return simulate_synthetic(demand_process(length, **overrides), seed)

    return _gen


@pytest.fixture
def demand_csv(tmp_path):
    def _gen(length=24 * 7 * 5, seed=11, name="synthetic.csv"):
        path = tmp_path / name
        export_csv(simulate_synthetic(demand_process(length), seed), path)
        return path

    return _gen


# =====================================================
# fitted models
# =====================================================


@pytest.fixture(scope="session")
def fitted_demand():
    """(history, calendar reaching 48 h past it, fitted DemandModel)."""
    series = simulate_synthetic(demand_process(24 * 7 * 4), 7)
    ctx = build_calendar(MONDAY, len(series) + 48, HolidayCalendar())
    model = fit_demand_model(series, ctx, SMALL_LAGS, FAST_LASSO)
    return series, ctx, model


@pytest.fixture
def manual_fit():
    """LassoFit for `spec` whose original-scale coefficients are exactly `coef`."""
    def _gen(spec, coef, intercept=0.0):
        names = spec.column_names(HolidayCalendar())
        kept = np.array([n != "const" for n in names])
        coef = np.asarray(coef, dtype=float)
        record = ScalingRecord(names, kept, np.zeros(len(names)), kept.astype(float),
                               float(intercept), 1.0)
        return LassoFit(record, np.array([1.0]), coef[kept][None, :], np.zeros(1), 0,
                        np.ones(1, dtype=bool))

    return _gen


@pytest.fixture
def manual_model(manual_fit):
    """DemandModel assembled from hand-set mean and variance coefficients."""
    def _gen(mean_spec, mean_coef, mean_intercept, var_spec, var_coef, var_intercept,
             innovations, target="squared"):
        mean = MeanModel(mean_spec, manual_fit(mean_spec, mean_coef, mean_intercept),
                         (0, 0), np.empty(0))
        variance = VarianceModel(var_spec, manual_fit(var_spec, var_coef, var_intercept),
                                 (0, 0), target, 1e-6, np.empty(0),
                                 np.asarray(innovations, dtype=float))
        return DemandModel(mean, variance, LagSets(), HolidayCalendar())

    return _gen
