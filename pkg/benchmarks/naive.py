# benchmarks/naive.py
"""Naive_Mean, Naive_FM and Naive_MRW with bootstrap residual ensembles."""
import logging
from dataclasses import dataclass

import numpy as np

from benchmarks.base import Forecaster
from ensemble.simulate import BOOTSTRAP_STREAM, draw_indices
from errors import ConfigurationError, EmptyBucket, MissingInWindow, MissingLag, SeriesTooShort
from models import CalendarContext, EnsembleForecast, TimeSeries

logger = logging.getLogger(__name__)

NAIVE_KINDS = ("mean", "fm", "mrw")
DAY_TYPES = ("monday", "tue_thu", "friday", "saturday", "sunday", "holiday")
# day of week (Mon=0) -> day type
_DOW_TYPE = np.array([0, 1, 1, 1, 2, 3, 4])


def day_types(ctx: CalendarContext, idx) -> np.ndarray:
    """Day type per index; holidays take precedence over the weekday."""
    idx = np.asarray(idx)
    out = _DOW_TYPE[ctx.day_of_week[idx]]
    return np.where(ctx.is_holiday[idx], 5, out)


def mrw_lag(ctx: CalendarContext, t: int) -> int:
    """168 on Monday, Saturday and Sunday, 24 otherwise."""
    return 168 if ctx.day_of_week[t] in (0, 5, 6) else 24


@dataclass(frozen=True, eq=False)
class NaiveModel:
    kind: str
    profile: np.ndarray
    residuals: np.ndarray

    @property
    def parameter_count(self) -> int:
        return int(self.profile.size)


def _buckets(kind: str, ctx: CalendarContext, idx: np.ndarray) -> np.ndarray:
    hod = ctx.hour_of_day[idx]
    if kind == "mean":
        return hod
    return day_types(ctx, idx) * 24 + hod


def fit_naive(series: TimeSeries, ctx: CalendarContext, kind: str,
              start: int = 0, stop: int | None = None) -> NaiveModel:
    if kind not in NAIVE_KINDS:
        raise ConfigurationError(f"unknown naive kind {kind!r}")
    stop = len(series) if stop is None else stop
    idx = np.arange(start, stop)
    y = series.values[idx]
    if np.isnan(y).any():
        raise MissingInWindow("naive fit window contains missing values",
                              index=int(idx[np.isnan(y)][0]))

    if kind == "mrw":
        if idx.size <= 168:
            raise SeriesTooShort("Naive_MRW needs more than one week of data",
                                 length=int(idx.size))
        targets = idx[idx >= start + 168]
        point = np.array([series.values[t - mrw_lag(ctx, t)] for t in targets])
        return NaiveModel(kind, np.empty(0), series.values[targets] - point)

    n_buckets = 24 if kind == "mean" else 24 * len(DAY_TYPES)
    b = _buckets(kind, ctx, idx)
    counts = np.bincount(b, minlength=n_buckets)
    sums = np.bincount(b, weights=y, minlength=n_buckets)
    profile = np.full(n_buckets, np.nan)
    filled = counts > 0
    profile[filled] = sums[filled] / counts[filled]

    if kind == "fm" and not filled[5 * 24:].all() and filled[4 * 24:5 * 24].all():
        logger.warning("no holiday hours in the window; Naive_FM uses the Sunday profile")
        holiday = slice(5 * 24, 6 * 24)
        profile[holiday] = np.where(filled[holiday], profile[holiday], profile[4 * 24:5 * 24])
        filled[holiday] = True
    if not filled.all():
        first = int(np.flatnonzero(~filled)[0])
        bucket = f"hour {first}" if kind == "mean" else \
            f"{DAY_TYPES[first // 24]} hour {first % 24}"
        raise EmptyBucket(f"no observations for bucket {bucket}", bucket=bucket)

    return NaiveModel(kind, profile, y - profile[b])


def forecast_naive(model: NaiveModel, history: TimeSeries, ctx: CalendarContext,
                   H: int, M: int, seed: int) -> EnsembleForecast:
    """Point path plus i.i.d. bootstrap residuals per hour and path."""
    origin = len(history)
    targets = np.arange(origin, origin + H)
    pool = model.residuals if model.residuals.size else np.zeros(1)
    eps = pool[draw_indices(seed, origin, BOOTSTRAP_STREAM, M, H, pool.size)]

    if model.kind != "mrw":
        point = model.profile[_buckets(model.kind, ctx, targets)]
        return EnsembleForecast(point[None, :] + eps, origin, seed)

    Y = np.empty((M, H))
    for h, t in enumerate(targets):
        src = t - mrw_lag(ctx, t)
        if src >= origin:
            base = Y[:, src - origin]
        else:
            if src < 0 or np.isnan(history.values[src]):
                raise MissingLag(f"Naive_MRW needs the value at index {src}", index=int(src))
            base = history.values[src]
        Y[:, h] = base + eps[:, h]
    return EnsembleForecast(Y, origin, seed)


class NaiveForecaster(Forecaster):
    def __init__(self, kind: str, settings: dict | None = None):
        super().__init__(settings)
        if kind not in NAIVE_KINDS:
            raise ConfigurationError(f"unknown naive kind {kind!r}")
        self.kind = kind
        self.name = f"naive_{kind}"

    def fit(self, history: TimeSeries, ctx: CalendarContext, start: int = 0) -> "NaiveForecaster":
        self.model = fit_naive(history, ctx, self.kind, start)
        return self

    def _forecast(self, history, ctx, H, M, seed) -> EnsembleForecast:
        return forecast_naive(self.model, history, ctx, H, M, seed)

    @property
    def parameter_count(self) -> int:
        return 0 if self.model is None else self.model.parameter_count
