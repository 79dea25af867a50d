# demand/model.py
"""ARX conditional mean with a time-varying ARCH variance, both fitted by lasso.

Estimation is two-stage: the mean model first, then the variance model on
its in-sample residuals.
"""
import logging
from dataclasses import dataclass, replace

import numpy as np

from errors import ConfigurationError, MissingLag, WindowTooShort
from features.lags import array_lagged
from features.matrix import build_matrix, deterministic_rows, design_rows, stochastic_rows
from features.spec import FeatureSpec, LagSets, SplineBasisConfig, mean_spec, variance_spec
from lasso.path import LassoFit, fit_lasso
from lasso.solver import LassoConfig
from models import CalendarContext, HolidayCalendar, TimeSeries

logger = logging.getLogger(__name__)

VARIANCE_TARGETS = ("squared", "absolute")
SIGMA_FLOOR_FACTOR = 1e-6


@dataclass(frozen=True, eq=False)
class MeanModel:
    spec: FeatureSpec
    fit: LassoFit
    window: tuple[int, int]
    residuals: np.ndarray

    @property
    def coefficients(self) -> dict[str, float]:
        return self.fit.coefficients

    @property
    def active_set(self) -> tuple[str, ...]:
        return self.fit.active_set

    @property
    def fitted_rows(self) -> np.ndarray:
        return np.arange(*self.window)


@dataclass(frozen=True, eq=False)
class VarianceModel:
    """Nonnegative ARCH fit on the squared (or absolute) mean residuals.

    `sigma2` holds the floored in-sample variances for `window`, and
    `innovations` the standardized residual pool with unit sample variance.
    """

    spec: FeatureSpec
    fit: LassoFit
    window: tuple[int, int]
    target: str
    sigma_floor: float
    sigma2: np.ndarray
    innovations: np.ndarray

    @property
    def coefficients(self) -> dict[str, float]:
        return self.fit.coefficients

    @property
    def active_set(self) -> tuple[str, ...]:
        return self.fit.active_set

    def transform(self, eps: np.ndarray) -> np.ndarray:
        """Residuals as they enter the regression: eps^2 or |eps|."""
        eps = np.asarray(eps, dtype=float)
        return eps * eps if self.target == "squared" else np.abs(eps)

    def to_sigma2(self, fitted: np.ndarray) -> np.ndarray:
        fitted = np.asarray(fitted, dtype=float)
        if self.target == "squared":
            return np.maximum(fitted, self.sigma_floor)
        return np.maximum(fitted, np.sqrt(self.sigma_floor)) ** 2


@dataclass(frozen=True, eq=False)
class DemandModel:
    mean: MeanModel
    variance: VarianceModel
    lag_sets: LagSets
    calendar: HolidayCalendar
    base_year: int = 2015

    @property
    def parameter_count(self) -> int:
        return len(self.mean.active_set) + len(self.variance.active_set)

    @property
    def max_lag(self) -> int:
        return max(self.mean.spec.max_lag, self.variance.spec.max_lag)


# ---------- fitting ----------
def _check_window(matrix, spec: FeatureSpec) -> None:
    n, p = matrix.shape
    if n <= p:
        raise WindowTooShort(
            f"{n} usable rows cannot identify {p} {spec.target} features",
            rows=n, features=p,
        )


def fit_mean(series: TimeSeries, ctx: CalendarContext, spec: FeatureSpec | None = None,
             lasso_cfg: LassoConfig | None = None,
             start: int = 0, stop: int | None = None) -> MeanModel:
    spec = spec or mean_spec()
    lasso_cfg = replace(lasso_cfg or LassoConfig(), nonnegative=False)
    matrix = build_matrix(spec, series, ctx, start, stop)
    _check_window(matrix, spec)
    fit = fit_lasso(matrix, lasso_cfg)

    residuals = np.full(len(series), np.nan)
    residuals[matrix.rows] = matrix.y - fit.predict(matrix.X)
    window = (int(matrix.rows[0]), int(matrix.rows[-1]) + 1)
    logger.info("mean model: rows %d..%d, %d of %d features active",
                window[0], window[1] - 1, len(fit.active_set), len(fit.names))
    return MeanModel(spec, fit, window, residuals)


def _level(fit: LassoFit) -> float:
    coef, intercept = fit.beta_orig
    if "const" in fit.names:
        return float(coef[fit.names.index("const")])
    return float(intercept)


def fit_variance(mean_model: MeanModel, series: TimeSeries, ctx: CalendarContext,
                 spec: FeatureSpec | None = None,
                 lasso_cfg: LassoConfig | None = None,
                 target: str = "squared") -> VarianceModel:
    if target not in VARIANCE_TARGETS:
        raise ConfigurationError(f"unknown variance target {target!r}")
    spec = spec or variance_spec()
    lasso_cfg = replace(lasso_cfg or LassoConfig(), nonnegative=True)

    eps = mean_model.residuals
    lagged = eps * eps if target == "squared" else np.abs(eps)
    start, stop = mean_model.window
    matrix = build_matrix(spec, series, ctx, start, stop, lag_source=lagged, target=lagged)
    _check_window(matrix, spec)
    fit = fit_lasso(matrix, lasso_cfg)
    level = _level(fit)
    if level < 0:
        # the constrained optimum then sits on a zero intercept
        logger.warning("variance intercept %.3g is negative; refitting without one", level)
        fit = fit_lasso(matrix, lasso_cfg, fit_intercept=False)

    sigma_floor = SIGMA_FLOOR_FACTOR * float(np.nanvar(eps))
    model = VarianceModel(spec, fit, (int(matrix.rows[0]), int(matrix.rows[-1]) + 1),
                          target, sigma_floor, np.empty(0), np.empty(0))
    sigma2 = model.to_sigma2(fit.predict(matrix.X))
    z = eps[matrix.rows] / np.sqrt(sigma2)
    sd = float(z.std())
    if sd > 0:
        z = z / sd
    logger.info("variance model: %d of %d features active, sigma floor %.3g",
                len(fit.active_set), len(fit.names), sigma_floor)
    return replace(model, sigma2=sigma2, innovations=z)


def fit_demand_model(series: TimeSeries, ctx: CalendarContext,
                     lag_sets: LagSets | None = None,
                     lasso_cfg: LassoConfig | None = None,
                     variance_target: str = "squared",
                     start: int = 0, stop: int | None = None,
                     spline: SplineBasisConfig | None = None) -> DemandModel:
    lag_sets = lag_sets or LagSets()
    m_spec = mean_spec(lag_sets, spline if spline is None else replace(spline, cumulative=True))
    v_spec = variance_spec(lag_sets, spline if spline is None else replace(spline, cumulative=False))
    mean = fit_mean(series, ctx, m_spec, lasso_cfg, start, stop)
    variance = fit_variance(mean, series, ctx, v_spec, lasso_cfg, variance_target)
    return DemandModel(mean, variance, lag_sets, ctx.calendar, ctx.base_year)


# ---------- prediction ----------
def _lag_values(values: np.ndarray, t: int, lags, what: str) -> None:
    for k in lags:
        i = t - k
        if i < 0 or i >= values.size or np.isnan(values[i]):
            raise MissingLag(f"{what} at index {i} (lag {k} of t={t}) is unavailable",
                             t=t, lag=k)


def _spec_lags(spec: FeatureSpec) -> tuple[int, ...]:
    lags = set(spec.lags) if "lags" in spec.blocks else set()
    if {"lag_hod", "lag_hd"} & set(spec.blocks):
        lags |= set(spec.interaction_lags)
    return tuple(sorted(lags))


def predict_mean_one_step(model: MeanModel | DemandModel, history: np.ndarray,
                          ctx: CalendarContext, t: int) -> float:
    """Conditional mean at index t from the observed values before t."""
    mean = model.mean if isinstance(model, DemandModel) else model
    history = np.asarray(history, dtype=float)
    _lag_values(history, t, _spec_lags(mean.spec), "demand")
    rows = np.array([t])
    row = design_rows(mean.spec, ctx, rows, array_lagged(history, rows))[0]
    return float(mean.fit.predict(row[None, :])[0])


def mean_residuals(model: MeanModel, series: TimeSeries, ctx: CalendarContext,
                   start: int, stop: int) -> np.ndarray:
    """One-step residuals for t in [start, stop), NaN elsewhere."""
    out = np.full(len(series), np.nan)
    start = max(start, model.spec.max_lag)
    if start >= stop:
        return out
    rows = np.arange(start, stop)
    X = design_rows(model.spec, ctx, rows, array_lagged(series.values, rows))
    out[rows] = series.values[rows] - model.fit.predict(X)
    return out


def predict_variance(model: VarianceModel | DemandModel, eps: np.ndarray,
                     ctx: CalendarContext, rows) -> np.ndarray:
    """Floored conditional variances at `rows` given residuals `eps`."""
    var = model.variance if isinstance(model, DemandModel) else model
    rows = np.atleast_1d(np.asarray(rows))
    source = var.transform(eps)
    for t in rows:
        _lag_values(source, int(t), _spec_lags(var.spec), "residual")
    X = design_rows(var.spec, ctx, rows, array_lagged(source, rows))
    return var.to_sigma2(var.fit.predict(X))


# ---------- recursion form used by the simulator ----------
@dataclass(frozen=True, eq=False)
class StepRecursion:
    """x_t = det[h] + sum_i weights[h, i] * x_{t - lags[i]} for t = origin + h.

    Features are linear in each lagged value, so the interaction terms fold
    into per-step effective lag weights.
    """

    lags: np.ndarray
    det: np.ndarray
    weights: np.ndarray


def step_recursion(spec: FeatureSpec, fit: LassoFit, ctx: CalendarContext,
                   targets: np.ndarray) -> StepRecursion:
    coef, intercept = fit.beta_orig
    names = fit.names
    n_det = sum(1 for n in names if not n.startswith(("Y_lag", "eps2_lag")))
    targets = np.asarray(targets)
    det = deterministic_rows(spec, ctx, targets) @ coef[:n_det] + intercept

    lags = _spec_lags(spec)
    weights = np.zeros((targets.size, len(lags)))
    if lags:
        eye = np.eye(len(lags))
        pos = {k: i for i, k in enumerate(lags)}

        def unit(k: int) -> np.ndarray:
            return eye[pos[k]]

        for h, t in enumerate(targets):
            sto = stochastic_rows(spec, ctx, np.array([t]), unit)
            weights[h] = sto @ coef[n_det:]
    keep = np.flatnonzero(np.any(weights != 0, axis=0))
    return StepRecursion(np.asarray(lags, dtype=int)[keep], det, weights[:, keep])


def in_sample_fitted(model: MeanModel, series: TimeSeries) -> np.ndarray:
    rows = model.fitted_rows
    return series.values[rows] - model.residuals[rows]
