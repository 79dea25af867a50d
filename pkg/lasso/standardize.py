# lasso/standardize.py
from dataclasses import dataclass

import numpy as np

from errors import AllColumnsConstant, DegenerateTarget
from features.spec import FeatureMatrix

# relative scale below which a column counts as constant
_CONSTANT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ScalingRecord:
    """Centering and scaling of every column; removed columns have kept=False."""

    names: tuple[str, ...]
    kept: np.ndarray
    x_mean: np.ndarray
    x_scale: np.ndarray
    y_mean: float
    y_scale: float

    @property
    def kept_names(self) -> tuple[str, ...]:
        return tuple(n for n, k in zip(self.names, self.kept) if k)

    def transform(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)[:, self.kept]
        return (X - self.x_mean[self.kept]) / self.x_scale[self.kept]

    def destandardize(self, beta_std: np.ndarray) -> tuple[np.ndarray, float]:
        """Coefficients on the original scale over all columns, plus intercept."""
        coef = np.zeros(len(self.names))
        coef[self.kept] = np.asarray(beta_std) * self.y_scale / self.x_scale[self.kept]
        intercept = self.y_mean - float(coef @ self.x_mean)
        return coef, intercept

    def to_dict(self) -> dict:
        return {
            "names": list(self.names),
            "kept": [bool(k) for k in self.kept],
            "x_mean": self.x_mean.tolist(),
            "x_scale": self.x_scale.tolist(),
            "y_mean": self.y_mean,
            "y_scale": self.y_scale,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ScalingRecord":
        return cls(tuple(d["names"]), np.array(d["kept"], dtype=bool),
                   np.array(d["x_mean"], dtype=float), np.array(d["x_scale"], dtype=float),
                   float(d["y_mean"]), float(d["y_scale"]))


def standardize(matrix: FeatureMatrix, center: bool = True
                ) -> tuple[np.ndarray, np.ndarray, ScalingRecord]:
    """Center and scale columns and target to mean 0, variance 1 (ddof=0).

    Constant columns are removed; the intercept absorbs them. With
    center=False nothing is centered, columns get unit mean square and the
    fit has no intercept.
    """
    X = np.asarray(matrix.X, dtype=float)
    y = np.asarray(matrix.y, dtype=float)

    y_mean = float(y.mean())
    y_scale = float(y.std())
    if y_scale <= _CONSTANT_TOL * max(1.0, abs(y_mean)):
        raise DegenerateTarget("target is constant; nothing to explain",
                               value=y_mean)

    x_mean = X.mean(axis=0)
    x_scale = X.std(axis=0)
    kept = x_scale > _CONSTANT_TOL * np.maximum(1.0, np.abs(x_mean))
    if not kept.any():
        raise AllColumnsConstant("every feature column is constant",
                                 n_columns=X.shape[1])
    if not center:
        x_scale = np.sqrt((X * X).mean(axis=0))
        x_mean = np.zeros_like(x_mean)
        y_scale = float(np.sqrt(y @ y / y.size))
        y_mean = 0.0
    x_scale = np.where(kept, x_scale, 0.0)

    record = ScalingRecord(tuple(matrix.names), kept, x_mean, x_scale, y_mean, y_scale)
    Xs = record.transform(X)
    ys = (y - y_mean) / y_scale
    return Xs, ys, record
