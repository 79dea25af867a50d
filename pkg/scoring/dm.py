# scoring/dm.py
"""Diebold-Mariano test on two loss series."""
from dataclasses import dataclass

import numpy as np
from scipy import stats
from statsmodels.tsa.stattools import acovf

from errors import DegenerateDifferential, InsufficientData

MIN_SAMPLES = 10


@dataclass(frozen=True)
class DMResult:
    statistic: float
    p_less: float      # H1: loss_a < loss_b on average
    p_greater: float   # H1: loss_a > loss_b on average
    lag: int
    alpha: float = 0.05

    @property
    def a_better(self) -> bool:
        return self.p_less < self.alpha

    @property
    def b_better(self) -> bool:
        return self.p_greater < self.alpha

    def to_dict(self) -> dict:
        return {"statistic": self.statistic, "p_less": self.p_less,
                "p_greater": self.p_greater, "lag": self.lag}


def long_run_variance(d: np.ndarray, lag: int) -> float:
    """Newey-West estimate with Bartlett weights."""
    gamma = acovf(d, adjusted=False, demean=True, fft=False, nlag=lag)
    weights = 1.0 - np.arange(1, lag + 1) / (lag + 1)
    return float(gamma[0] + 2.0 * np.sum(weights * gamma[1:]))


def dm_test(loss_a, loss_b, alpha: float = 0.05) -> DMResult:
    a = np.asarray(loss_a, dtype=float)
    b = np.asarray(loss_b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise InsufficientData("loss series must be 1-d with equal length")
    N = a.size
    if N < MIN_SAMPLES:
        raise InsufficientData(f"DM test needs at least {MIN_SAMPLES} losses, got {N}", N=N)
    d = a - b
    if np.all(d == 0):
        raise DegenerateDifferential("loss differential is identically zero")
    lag = int(np.floor(N ** (1 / 3) + 1e-9))
    lrv = long_run_variance(d, lag)
    if not lrv > 0:
        raise DegenerateDifferential("loss differential has no variance", lrv=lrv)
    stat = float(d.mean() / np.sqrt(lrv / N))
    return DMResult(stat, float(stats.norm.cdf(stat)), float(stats.norm.sf(stat)), lag, alpha)
