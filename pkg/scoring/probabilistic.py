# scoring/probabilistic.py
"""Pinball, energy score and CRPS for ensemble forecasts."""
import logging
import warnings

import numpy as np
from scipy import stats
from scipy.spatial.distance import cdist, pdist

from ensemble.analysis import check_grid
from errors import DimensionMismatch, NonMonotoneQuantiles

logger = logging.getLogger(__name__)


def pinball(actuals, quantiles, grid) -> tuple[float, np.ndarray, np.ndarray]:
    """Average quantile loss over levels and hours.

    `quantiles` is (L, H). Returns the double average, the per-level curve
    (averaged over hours) and the per-hour curve (averaged over levels).
    """
    grid = check_grid(grid)
    y = np.atleast_1d(np.asarray(actuals, dtype=float))
    q = np.atleast_2d(np.asarray(quantiles, dtype=float))
    if q.shape != (grid.size, y.size):
        raise DimensionMismatch("quantile curves must be (levels, horizon)",
                                shape=q.shape, levels=grid.size, H=y.size)
    if np.any(np.diff(q, axis=0) < 0):
        msg = "quantile curves decrease in the level"
        logger.warning(msg)
        warnings.warn(msg, NonMonotoneQuantiles, stacklevel=2)
    diff = y[None, :] - q
    loss = diff * (grid[:, None] - (diff < 0))
    return float(loss.mean()), loss.mean(axis=1), loss.mean(axis=0)


def energy_score(paths, actuals, second=None, max_members: int | None = None,
                 seed: int = 0) -> float:
    """Energy score of an (M, H) ensemble.

    The spread term compares the ensemble with itself unless an independent
    `second` ensemble is given. With `max_members` the spread term uses a
    seeded random subset of that many members.
    """
    X = np.atleast_2d(np.asarray(paths, dtype=float))
    y = np.atleast_1d(np.asarray(actuals, dtype=float))
    if X.shape[1] != y.size:
        raise DimensionMismatch("ensemble horizon differs from the actuals",
                                H=X.shape[1], actuals=y.size)
    accuracy = float(np.mean(np.linalg.norm(X - y[None, :], axis=1)))

    Xs = X
    if max_members is not None and X.shape[0] > max_members:
        rows = np.random.default_rng(seed).choice(X.shape[0], max_members, replace=False)
        Xs = X[np.sort(rows)]
    if second is None:
        M = Xs.shape[0]
        spread = 2.0 * float(pdist(Xs).sum()) / (2.0 * M * M)
    else:
        X2 = np.atleast_2d(np.asarray(second, dtype=float))
        if X2.shape[1] != y.size:
            raise DimensionMismatch("second ensemble horizon differs from the actuals")
        spread = float(cdist(Xs, X2).sum()) / (2.0 * Xs.shape[0] * X2.shape[0])
    return accuracy - spread


def crps_ensemble(members, y: float) -> float:
    """Sample CRPS: mean|x - y| - sum|x_i - x_l| / (2 M^2)."""
    x = np.asarray(members, dtype=float).ravel()
    M = x.size
    return float(np.mean(np.abs(x - y)) - np.abs(x[:, None] - x[None, :]).sum() / (2.0 * M * M))


def gaussian_crps(mu: float, sigma: float, y: float) -> float:
    z = (y - mu) / sigma
    return float(sigma * (z * (2 * stats.norm.cdf(z) - 1) + 2 * stats.norm.pdf(z)
                          - 1 / np.sqrt(np.pi)))


def interval_coverage(paths, actuals, level: float = 0.8) -> np.ndarray:
    """Per hour: does the actual fall inside the central `level` interval."""
    lo, hi = (1 - level) / 2, (1 + level) / 2
    q = np.quantile(np.asarray(paths, dtype=float), [lo, hi], axis=0, method="inverted_cdf")
    y = np.asarray(actuals, dtype=float)
    return (y >= q[0]) & (y <= q[1])
