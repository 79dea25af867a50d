# ensemble/analysis.py
import numpy as np
from scipy import stats

from errors import ConfigurationError, EmptyGrid, WindowExceedsHorizon
from models import EnsembleForecast


def _paths(ens) -> np.ndarray:
    return ens.paths if isinstance(ens, EnsembleForecast) else np.asarray(ens, dtype=float)


def cumulative_demand(ens, window: int) -> np.ndarray:
    """Per-path demand summed over the first `window` hours."""
    paths = _paths(ens)
    if window < 1 or window > paths.shape[1]:
        raise WindowExceedsHorizon(
            f"window of {window} hours does not fit a {paths.shape[1]}-hour horizon",
            window=window, H=paths.shape[1],
        )
    return paths[:, :window].sum(axis=1)


def exceedance_probability(ens, capacity: float, window: int) -> float:
    """Share of paths whose cumulative demand over `window` hours exceeds capacity."""
    return float(np.mean(cumulative_demand(ens, window) > capacity))


def quantile_grid(levels: int = 99) -> np.ndarray:
    """Equidistant levels 1/(L+1) .. L/(L+1); L=99 gives 0.01..0.99."""
    if levels < 1:
        raise EmptyGrid("quantile grid needs at least one level")
    return np.arange(1, levels + 1) / (levels + 1)


def check_grid(grid) -> np.ndarray:
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    if grid.size == 0:
        raise EmptyGrid("quantile grid is empty")
    if np.any(grid <= 0) or np.any(grid >= 1):
        raise ConfigurationError("quantile levels must lie in (0, 1)")
    if np.any(np.diff(grid) <= 0):
        raise ConfigurationError("quantile levels must be strictly increasing")
    return grid


def empirical_quantiles(ens, grid) -> np.ndarray:
    """(L, H) inverted-CDF quantiles: the smallest value with F(x) >= tau."""
    grid = check_grid(grid)
    return np.quantile(_paths(ens), grid, axis=0, method="inverted_cdf")


def rank_correlation(paths: np.ndarray) -> np.ndarray:
    """H x H Spearman correlation across rows (paths or realized days)."""
    paths = np.asarray(paths, dtype=float)
    H = paths.shape[1]
    if H == 1:
        return np.ones((1, 1))
    rho = np.asarray(stats.spearmanr(paths).statistic, dtype=float)
    if rho.ndim == 0:
        # two columns come back as a single coefficient
        return np.array([[1.0, float(rho)], [float(rho), 1.0]])
    return rho
