# ensemble/simulate.py
"""Recursive Monte-Carlo paths from a fitted DemandModel."""
import logging

import numpy as np

from demand.model import DemandModel, mean_residuals, step_recursion
from errors import DimensionMismatch, MissingLag, UnfittedModel
from models import CalendarContext, EnsembleForecast, TimeSeries

logger = logging.getLogger(__name__)

# substream ids under one (seed, origin)
INNOVATION_STREAM = 0
BOOTSTRAP_STREAM = 1
REARRANGE_STREAM = 2


def path_generator(seed: int, origin: int, stream: int, path: int) -> np.random.Generator:
    """PCG64 generator of one path, independent of how paths are scheduled."""
    return np.random.default_rng(np.random.SeedSequence([seed, origin, stream, path]))


def draw_indices(seed: int, origin: int, stream: int, M: int, H: int, pool_size: int) -> np.ndarray:
    """(M, H) uniform resampling indices into a pool of `pool_size` values."""
    out = np.empty((M, H), dtype=np.int64)
    for m in range(M):
        out[m] = path_generator(seed, origin, stream, m).integers(0, pool_size, size=H)
    return out


def _check_reach(origin: int, lags: np.ndarray, what: str) -> None:
    for k in lags:
        i = origin - int(k)
        if i < 0:
            raise MissingLag(f"{what} lag {k} reaches before the series start", lag=int(k))


def simulate(model: DemandModel | None, history: TimeSeries, ctx: CalendarContext,
             H: int, M: int, seed: int, floor_at_zero: bool = False) -> EnsembleForecast:
    """M sample paths for the H hours following the end of `history`.

    Lags before the origin come from the observed history (and its one-step
    residuals); later lags from the path being simulated. With floor_at_zero
    simulated demand is clamped at 0 before it feeds later lags, and the
    residual passed to the variance lags is taken from the clamped value.
    """
    if model is None or model.variance.innovations.size == 0:
        raise UnfittedModel("simulation needs a fitted demand model")
    if H < 1 or M < 1:
        raise DimensionMismatch("H and M must be >= 1", H=H, M=M)
    origin = len(history)
    if len(ctx) < origin + H:
        raise DimensionMismatch("calendar context does not cover the horizon",
                                needed=origin + H, available=len(ctx))

    targets = np.arange(origin, origin + H)
    mean_rec = step_recursion(model.mean.spec, model.mean.fit, ctx, targets)
    var_rec = step_recursion(model.variance.spec, model.variance.fit, ctx, targets)
    var = model.variance

    y_hist = history.values
    need_eps = int(var_rec.lags.max(initial=0))
    eps_hist = var.transform(
        mean_residuals(model.mean, history, ctx, origin - need_eps, origin)
    )
    _check_reach(origin, mean_rec.lags, "demand")
    _check_reach(origin, var_rec.lags, "residual")

    pool = var.innovations
    Z = pool[draw_indices(seed, origin, INNOVATION_STREAM, M, H, pool.size)]

    Y = np.empty((M, H))
    E = np.empty((M, H))
    for h in range(H):
        mu = mean_rec.det[h] + _lagged(Y, y_hist, origin, h, mean_rec.lags, "demand") @ mean_rec.weights[h]
        raw = var_rec.det[h] + _lagged(E, eps_hist, origin, h, var_rec.lags, "residual") @ var_rec.weights[h]
        eps = np.sqrt(var.to_sigma2(raw)) * Z[:, h]
        Y[:, h] = mu + eps
        if floor_at_zero:
            np.maximum(Y[:, h], 0.0, out=Y[:, h])
        E[:, h] = var.transform(Y[:, h] - mu)

    logger.debug("simulated %d paths over %d hours at origin %d", M, H, origin)
    return EnsembleForecast(Y, origin, seed, "standard", "arx_arch_lasso")


def _lagged(sim: np.ndarray, hist: np.ndarray, origin: int, h: int,
            lags: np.ndarray, what: str) -> np.ndarray:
    """(M, len(lags)) lagged values for step h: history or simulated."""
    M = sim.shape[0]
    out = np.empty((M, lags.size))
    for i, k in enumerate(lags):
        j = h - int(k)
        if j >= 0:
            out[:, i] = sim[:, j]
        else:
            v = hist[origin + j]
            if np.isnan(v):
                raise MissingLag(f"{what} at index {origin + j} is missing",
                                 index=origin + j, lag=int(k))
            out[:, i] = v
    return out
