# lasso/solver.py
"""Cyclic coordinate descent for (1/(2n))||y - Xb||^2 + lam*||b||_1.

Works on the covariance form (G = X'X/n, c = X'y/n): one coordinate update
costs O(p), independent of the sample size.
"""
import logging
import warnings
from dataclasses import dataclass, field

import numpy as np

from errors import ConfigurationError, MaxSweepsExceeded

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LassoConfig:
    n_lambdas: int = 100
    lambda_min_ratio: float = 1e-4
    tolerance: float = 1e-7
    max_sweeps: int = 10_000
    nonnegative: bool = False
    # stop the path once max|step change| < path_tolerance * ||beta||_1; 0 runs it all
    path_tolerance: float = 1e-3

    def __post_init__(self):
        if not 0 < self.lambda_min_ratio < 1:
            raise ConfigurationError("lambda_min_ratio must lie in (0, 1)")
        if self.tolerance <= 0:
            raise ConfigurationError("tolerance must be > 0")
        if self.path_tolerance < 0:
            raise ConfigurationError("path_tolerance must be >= 0")
        if self.n_lambdas < 1 or self.max_sweeps < 1:
            raise ConfigurationError("n_lambdas and max_sweeps must be >= 1")


@dataclass(frozen=True, eq=False)
class Gram:
    G: np.ndarray
    c: np.ndarray
    yy: float
    n: int

    @classmethod
    def from_data(cls, X: np.ndarray, y: np.ndarray) -> "Gram":
        n = X.shape[0]
        return cls(X.T @ X / n, X.T @ y / n, float(y @ y) / n, n)

    def objective(self, beta: np.ndarray, lam: float, Gb: np.ndarray | None = None) -> float:
        Gb = self.G @ beta if Gb is None else Gb
        quad = 0.5 * (self.yy - 2.0 * float(self.c @ beta) + float(beta @ Gb))
        return quad + lam * float(np.abs(beta).sum())


@dataclass(frozen=True, eq=False)
class CDResult:
    beta: np.ndarray
    converged: bool
    sweeps: int
    objective: list = field(default_factory=list)


def soft_threshold(z: float, lam: float) -> float:
    if z > lam:
        return z - lam
    if z < -lam:
        return z + lam
    return 0.0


def objective(X: np.ndarray, y: np.ndarray, beta: np.ndarray, lam: float) -> float:
    r = y - X @ beta
    return float(r @ r) / (2 * X.shape[0]) + lam * float(np.abs(beta).sum())


def coordinate_descent(X: np.ndarray, y: np.ndarray, lam: float,
                       warm_start: np.ndarray | None = None,
                       cfg: LassoConfig | None = None,
                       gram: Gram | None = None) -> CDResult:
    """Minimize the lasso objective at one lambda.

    After each full sweep that moved something, only the active coordinates
    are swept until they settle; a final full sweep confirms convergence.
    Stops when the largest coefficient change of a full sweep is below the
    tolerance. On hitting max_sweeps the last iterate is returned with
    converged=False.
    """
    cfg = cfg or LassoConfig()
    if lam < 0:
        raise ConfigurationError("lambda must be >= 0")
    gram = gram or Gram.from_data(X, y)
    G, c = gram.G, gram.c
    p = c.size
    diag = np.diag(G).copy()

    beta = np.zeros(p) if warm_start is None else np.array(warm_start, dtype=float)
    if cfg.nonnegative:
        beta = np.maximum(beta, 0.0)
    Gb = G @ beta
    trace = [gram.objective(beta, lam, Gb)]

    all_idx = np.flatnonzero(diag > 0)
    full = True
    converged = False
    sweeps = 0
    while sweeps < cfg.max_sweeps:
        idx = all_idx if full else np.flatnonzero(beta)
        max_delta = 0.0
        for j in idx:
            z = c[j] - Gb[j] + diag[j] * beta[j]
            if cfg.nonnegative:
                new = max(z - lam, 0.0) / diag[j]
            else:
                new = soft_threshold(z, lam) / diag[j]
            delta = new - beta[j]
            if delta != 0.0:
                Gb += G[j] * delta
                beta[j] = new
                if abs(delta) > max_delta:
                    max_delta = abs(delta)
        sweeps += 1
        trace.append(gram.objective(beta, lam, Gb))
        if max_delta < cfg.tolerance:
            if full:
                converged = True
                break
            full = True
        else:
            full = False

    if not converged:
        msg = f"coordinate descent hit {cfg.max_sweeps} sweeps at lambda={lam:.3g}"
        logger.warning(msg)
        warnings.warn(msg, MaxSweepsExceeded, stacklevel=2)
    return CDResult(beta, converged, sweeps, trace)


def kkt_violation(X: np.ndarray, y: np.ndarray, beta: np.ndarray, lam: float,
                  nonnegative: bool = False) -> float:
    """Largest violation of the lasso optimality conditions."""
    n = X.shape[0]
    g = X.T @ (y - X @ beta) / n
    active = beta != 0
    viol = np.zeros_like(g)
    viol[active] = np.abs(g[active] - lam * np.sign(beta[active]))
    if nonnegative:
        viol[~active] = np.maximum(g[~active] - lam, 0.0)
    else:
        viol[~active] = np.maximum(np.abs(g[~active]) - lam, 0.0)
    return float(viol.max(initial=0.0))
