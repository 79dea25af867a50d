# benchmarks/seasonal_ar.py
"""AR(p) on the deseasonalized series, order chosen by BIC.

The hour-of-day (D) or hour-of-week (W) profile and the remaining sample
mean are removed, the AR part is fitted by Yule-Walker through the
Levinson-Durbin recursion, and forecasts add the profile back.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter
from statsmodels.tsa.stattools import acovf

from benchmarks.base import Forecaster
from ensemble.simulate import BOOTSTRAP_STREAM, draw_indices
from errors import (
    ConfigurationError,
    EmptyBucket,
    MissingInWindow,
    MissingLag,
    SeriesTooShort,
    SingularToeplitz,
)
from models import CalendarContext, EnsembleForecast, TimeSeries

logger = logging.getLogger(__name__)

AR_VARIANTS = ("D", "W")
DEFAULT_P_MAX = 1500


@dataclass(frozen=True, eq=False)
class SeasonalARModel:
    variant: str
    profile: np.ndarray
    level: float
    phi: np.ndarray
    sigma2: float
    residuals: np.ndarray
    bic: np.ndarray

    @property
    def p(self) -> int:
        return int(self.phi.size)

    @property
    def parameter_count(self) -> int:
        return int(self.profile.size) + 1 + self.p


def _bucket(variant: str, ctx: CalendarContext, idx) -> np.ndarray:
    return ctx.hour_of_day[idx] if variant == "D" else ctx.hour_of_week[idx]


def levinson_durbin(acov: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Yule-Walker coefficients of order `order` and innovation variances 0..order."""
    acov = np.asarray(acov, dtype=float)
    sigma2 = np.empty(order + 1)
    sigma2[0] = acov[0]
    if not acov[0] > 0:
        raise SingularToeplitz("series has zero variance after seasonal adjustment")
    phi = np.zeros(0)
    for k in range(1, order + 1):
        acc = acov[k] - phi @ acov[k - 1:0:-1]
        kappa = acc / sigma2[k - 1]
        if not abs(kappa) < 1.0:
            raise SingularToeplitz(f"autocovariance matrix is singular at order {k}",
                                   order=k)
        phi = np.concatenate([phi - kappa * phi[::-1], [kappa]])
        sigma2[k] = sigma2[k - 1] * (1.0 - kappa * kappa)
    return phi, sigma2


def fit_seasonal_ar(series: TimeSeries, ctx: CalendarContext, variant: str = "W",
                    p_max: int = DEFAULT_P_MAX, start: int = 0,
                    stop: int | None = None) -> SeasonalARModel:
    if variant not in AR_VARIANTS:
        raise ConfigurationError(f"unknown AR variant {variant!r}")
    if p_max < 0:
        raise ConfigurationError("p_max must be >= 0")
    stop = len(series) if stop is None else stop
    idx = np.arange(start, stop)
    y = series.values[idx]
    n = y.size
    if n <= 2 * p_max:
        raise SeriesTooShort(f"{n} observations are too few for AR order up to {p_max}",
                             length=n, p_max=p_max)
    if np.isnan(y).any():
        raise MissingInWindow("AR fit window contains missing values",
                              index=int(idx[np.isnan(y)][0]))

    n_buckets = 24 if variant == "D" else 168
    b = _bucket(variant, ctx, idx)
    counts = np.bincount(b, minlength=n_buckets)
    if (counts == 0).any():
        first = int(np.flatnonzero(counts == 0)[0])
        raise EmptyBucket(f"no observations for hour {first}", bucket=first)
    profile = np.bincount(b, weights=y, minlength=n_buckets) / counts
    dev = y - profile[b]
    level = float(dev.mean())
    x = dev - level

    acov = acovf(x, adjusted=False, demean=False, fft=True, nlag=p_max)
    _, sigma2 = levinson_durbin(acov, p_max)
    bic = n * np.log(np.maximum(sigma2, np.finfo(float).tiny)) + np.arange(p_max + 1) * np.log(n)
    p = int(np.argmin(bic))
    phi, _ = levinson_durbin(acov, p)

    residuals = lfilter(np.concatenate([[1.0], -phi]), [1.0], x)[p:]
    logger.info("AR(%d)^%s fitted on %d hours, innovation variance %.4g",
                p, variant, n, sigma2[p])
    return SeasonalARModel(variant, profile, level, phi, float(sigma2[p]), residuals, bic)


def forecast_seasonal_ar(model: SeasonalARModel, history: TimeSeries, ctx: CalendarContext,
                         H: int, M: int, seed: int) -> EnsembleForecast:
    origin = len(history)
    p = model.p
    if origin < p:
        raise MissingLag(f"AR({p}) needs {p} past values, history has {origin}")
    past = np.arange(origin - p, origin)
    y_past = history.values[past]
    if np.isnan(y_past).any():
        raise MissingLag("history misses values inside the AR order",
                         index=int(past[np.isnan(y_past)][0]))

    pool = model.residuals if model.residuals.size else np.zeros(1)
    eps = pool[draw_indices(seed, origin, BOOTSTRAP_STREAM, M, H, pool.size)]

    X = np.empty((M, p + H))
    X[:, :p] = y_past - model.profile[_bucket(model.variant, ctx, past)] - model.level
    rev = model.phi[::-1]
    for h in range(H):
        X[:, p + h] = X[:, h:h + p] @ rev + eps[:, h]

    targets = np.arange(origin, origin + H)
    seasonal = model.profile[_bucket(model.variant, ctx, targets)] + model.level
    return EnsembleForecast(X[:, p:] + seasonal[None, :], origin, seed)


class SeasonalARForecaster(Forecaster):
    def __init__(self, variant: str, settings: dict | None = None):
        super().__init__(settings)
        if variant not in AR_VARIANTS:
            raise ConfigurationError(f"unknown AR variant {variant!r}")
        self.variant = variant
        self.name = f"ar_{variant.lower()}"
        self.p_max = self.setting("AR_P_MAX", int, DEFAULT_P_MAX)

    def fit(self, history: TimeSeries, ctx: CalendarContext, start: int = 0) -> "SeasonalARForecaster":
        self.model = fit_seasonal_ar(history, ctx, self.variant, self.p_max, start)
        return self

    def _forecast(self, history, ctx, H, M, seed) -> EnsembleForecast:
        return forecast_seasonal_ar(self.model, history, ctx, H, M, seed)

    @property
    def parameter_count(self) -> int:
        return 0 if self.model is None else self.model.parameter_count
