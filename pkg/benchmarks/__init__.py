from benchmarks.base import Forecaster
from benchmarks.lasso_arx import LassoARXForecaster
from benchmarks.naive import NaiveForecaster, NaiveModel, fit_naive, forecast_naive
from benchmarks.registry import make_forecaster, registered_models
from benchmarks.seasonal_ar import (
    SeasonalARForecaster,
    SeasonalARModel,
    fit_seasonal_ar,
    forecast_seasonal_ar,
    levinson_durbin,
)

__all__ = [
    "Forecaster",
    "LassoARXForecaster",
    "NaiveForecaster",
    "NaiveModel",
    "fit_naive",
    "forecast_naive",
    "make_forecaster",
    "registered_models",
    "SeasonalARForecaster",
    "SeasonalARModel",
    "fit_seasonal_ar",
    "forecast_seasonal_ar",
    "levinson_durbin",
]
