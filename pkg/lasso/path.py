# lasso/path.py
import logging
from dataclasses import dataclass

import numpy as np

from features.spec import FeatureMatrix
from lasso.solver import Gram, LassoConfig, coordinate_descent
from lasso.standardize import ScalingRecord, standardize

logger = logging.getLogger(__name__)


def lambda_path(X: np.ndarray, y: np.ndarray, cfg: LassoConfig,
                gram: Gram | None = None) -> np.ndarray:
    """Geometric grid from lambda_max = max_j |x_j'y|/n down by lambda_min_ratio."""
    c = gram.c if gram is not None else X.T @ y / X.shape[0]
    lam_max = float(np.max(np.abs(c)))
    if lam_max <= 0.0:
        # target orthogonal to every column: all fits are zero anyway
        lam_max = 1.0
    if cfg.n_lambdas == 1:
        return np.array([lam_max])
    return lam_max * np.geomspace(1.0, cfg.lambda_min_ratio, cfg.n_lambdas)


def fit_path(X: np.ndarray, y: np.ndarray, cfg: LassoConfig
             ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Warm-started fits along the path: (lambdas, betas (L, p), converged (L,)).

    The path ends early once a step moves no coefficient by more than
    `cfg.path_tolerance` times the L1 norm; only computed points are returned.
    """
    gram = Gram.from_data(X, y)
    lambdas = lambda_path(X, y, cfg, gram)
    betas = np.zeros((lambdas.size, X.shape[1]))
    converged = np.ones(lambdas.size, dtype=bool)
    beta = np.zeros(X.shape[1])
    for i, lam in enumerate(lambdas):
        res = coordinate_descent(X, y, lam, warm_start=beta, cfg=cfg, gram=gram)
        step = float(np.max(np.abs(res.beta - beta), initial=0.0))
        beta = res.beta
        betas[i] = beta
        converged[i] = res.converged
        if step < cfg.path_tolerance * float(np.abs(beta).sum()):
            logger.debug("path stopped at point %d of %d", i + 1, lambdas.size)
            return lambdas[:i + 1], betas[:i + 1], converged[:i + 1]
    return lambdas, betas, converged


def bic_scores(rss: np.ndarray, df: np.ndarray, n: int) -> np.ndarray:
    rss = np.maximum(np.asarray(rss, dtype=float), np.finfo(float).tiny)
    return n * np.log(rss / n) + np.asarray(df) * np.log(n)


def path_rss(X: np.ndarray, y: np.ndarray, betas: np.ndarray) -> np.ndarray:
    resid = y[:, None] - X @ betas.T
    return np.einsum("ij,ij->j", resid, resid)


def path_bic(betas: np.ndarray, X: np.ndarray, y: np.ndarray, y_scale: float = 1.0) -> np.ndarray:
    """BIC along the path with df = number of nonzero coefficients.

    `y_scale` puts the RSS of a standardized fit back on the target's scale.
    """
    rss = path_rss(X, y, betas) * y_scale ** 2
    return bic_scores(rss, np.count_nonzero(betas, axis=1), X.shape[0])


def select_bic(betas: np.ndarray, X: np.ndarray, y: np.ndarray) -> int:
    """BIC-optimal index; on ties the first (largest) lambda wins."""
    return int(np.argmin(path_bic(betas, X, y)))


@dataclass(frozen=True, eq=False)
class LassoFit:
    record: ScalingRecord
    lambda_path: np.ndarray
    beta_std: np.ndarray
    bic: np.ndarray
    selected: int
    converged: np.ndarray
    nonnegative: bool = False

    @property
    def names(self) -> tuple[str, ...]:
        return self.record.names

    @property
    def selected_lambda(self) -> float:
        return float(self.lambda_path[self.selected])

    @property
    def coef_std(self) -> np.ndarray:
        return self.beta_std[self.selected]

    @property
    def beta_orig(self) -> tuple[np.ndarray, float]:
        """Original-scale coefficients over all columns and the intercept.

        When the design has a `const` column the intercept is folded into it
        and the returned intercept is 0.
        """
        coef, intercept = self.record.destandardize(self.coef_std)
        if "const" in self.names:
            coef[self.names.index("const")] += intercept
            intercept = 0.0
        return coef, intercept

    @property
    def coefficients(self) -> dict[str, float]:
        coef, _ = self.beta_orig
        return dict(zip(self.names, coef.tolist()))

    @property
    def active_set(self) -> tuple[str, ...]:
        kept = self.record.kept_names
        return tuple(kept[j] for j in np.flatnonzero(self.coef_std))

    def predict(self, X: np.ndarray) -> np.ndarray:
        coef, intercept = self.beta_orig
        return np.asarray(X, dtype=float) @ coef + intercept

    def to_dict(self) -> dict:
        return {
            "record": self.record.to_dict(),
            "lambda_path": self.lambda_path.tolist(),
            "beta_std": self.beta_std.tolist(),
            "bic": self.bic.tolist(),
            "selected": self.selected,
            "converged": [bool(c) for c in self.converged],
            "nonnegative": self.nonnegative,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "LassoFit":
        p = int(np.sum(d["record"]["kept"]))
        return cls(
            record=ScalingRecord.from_dict(d["record"]),
            lambda_path=np.array(d["lambda_path"], dtype=float),
            beta_std=np.array(d["beta_std"], dtype=float).reshape(-1, p),
            bic=np.array(d["bic"], dtype=float),
            selected=int(d["selected"]),
            converged=np.array(d["converged"], dtype=bool),
            nonnegative=bool(d["nonnegative"]),
        )


def fit_lasso(matrix: FeatureMatrix, cfg: LassoConfig | None = None,
              fit_intercept: bool = True) -> LassoFit:
    """Standardize, fit the lambda path and pick lambda by BIC."""
    cfg = cfg or LassoConfig()
    Xs, ys, record = standardize(matrix, center=fit_intercept)
    lambdas, betas, converged = fit_path(Xs, ys, cfg)

    n = Xs.shape[0]
    bic = path_bic(betas, Xs, ys, record.y_scale)
    selected = select_bic(betas, Xs, ys)

    fit = LassoFit(record, lambdas, betas, bic, selected, converged, cfg.nonnegative)
    logger.info(
        "lasso fit: n=%d p=%d kept=%d lambda=%.4g (%d/%d) active=%d",
        n, len(record.names), Xs.shape[1], fit.selected_lambda,
        selected + 1, lambdas.size, len(fit.active_set),
    )
    if not converged.all():
        logger.warning("%d of %d path points did not converge",
                       int((~converged).sum()), lambdas.size)
    return fit
