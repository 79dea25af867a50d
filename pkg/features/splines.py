# features/splines.py
"""Periodic (and cumulative) B-spline basis for the annual cycle.

Basis function j is a cardinal B-spline of degree D centred at (j-1)*h,
with equidistant knots of spacing h = S/K, wrapped with period S.
"""
import numpy as np
from scipy.interpolate import BSpline

from features.spec import FeatureBlock, SplineBasisConfig
from models import CalendarContext


def cardinal_bspline(x, knots, degree: int) -> np.ndarray:
    """B-spline of `degree` on `knots` (degree+2 values); zero outside [k_0, k_last)."""
    x = np.asarray(x, dtype=float)
    knots = np.asarray(knots, dtype=float)
    element = BSpline.basis_element(knots, extrapolate=False)
    out = np.nan_to_num(element(x), nan=0.0)
    out[(x < knots[0]) | (x >= knots[-1])] = 0.0
    return out


def periodic_basis(position, cfg: SplineBasisConfig) -> np.ndarray:
    """All K periodic basis functions at `position` (hours into the period)."""
    cfg.validate()
    x = np.mod(np.asarray(position, dtype=float), cfg.seasonality)
    h = cfg.knot_spacing
    D = cfg.degree
    offsets = h * (np.arange(D + 2) - (D + 1) / 2)
    out = np.zeros((x.size, cfg.n_basis))
    for j in range(cfg.n_basis):
        knots = j * h + offsets
        for wrap in (-2, -1, 0, 1, 2):
            out[:, j] += cardinal_bspline(x - wrap * cfg.seasonality, knots, D)
    return out


def bspline_basis(ctx: CalendarContext, cfg: SplineBasisConfig, rows=None) -> FeatureBlock:
    """B_1..B_{K-1} (or their cumulative sums); the last column is dropped."""
    rows = np.arange(len(ctx)) if rows is None else np.asarray(rows)
    basis = periodic_basis(ctx.position_in_year[rows], cfg)
    if cfg.cumulative:
        basis = np.cumsum(basis, axis=1)
        stem = "Bcum"
    else:
        stem = "B"
    K = cfg.n_basis
    return FeatureBlock(tuple(f"{stem}_{i}" for i in range(1, K)), basis[:, :K - 1])
