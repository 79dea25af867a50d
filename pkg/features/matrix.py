# features/matrix.py
from dataclasses import replace

import numpy as np

from errors import DimensionMismatch, MissingInWindow, SeriesTooShort
from features.dummies import (
    fdh_dummies,
    fwh_dummies,
    hd_dummies,
    hod_dummies,
    hod_full,
    how_dummies,
)
from features.lags import Lagged, array_lagged, interaction_columns, lag_columns
from features.spec import FeatureMatrix, FeatureSpec
from features.splines import bspline_basis
from models import CalendarContext, TimeSeries


def deterministic_rows(spec: FeatureSpec, ctx: CalendarContext, rows) -> np.ndarray:
    """Calendar-only columns of `spec` for the indices `rows`."""
    rows = np.asarray(rows)
    cal = ctx.calendar
    parts = []
    for b in spec.deterministic_blocks:
        if b == "const":
            parts.append(np.ones((rows.size, 1)))
        elif b == "hod":
            parts.append(hod_dummies(ctx, False, rows).values)
        elif b == "hod_cum":
            parts.append(hod_dummies(ctx, True, rows).values)
        elif b == "how":
            parts.append(how_dummies(ctx, rows).values)
        elif b in ("spline", "spline_cum"):
            cfg = spec.spline
            if cfg.cumulative != (b == "spline_cum"):
                cfg = replace(cfg, cumulative=(b == "spline_cum"))
            parts.append(bspline_basis(ctx, cfg, rows).values)
        elif b == "hd" and cal.P:
            parts.append(hd_dummies(ctx, rows).values)
        elif b in ("fwh", "fwh_cum") and cal.W:
            parts.append(fwh_dummies(ctx, b == "fwh_cum", rows).values)
        elif b in ("fdh", "fdh_cum") and cal.V:
            parts.append(fdh_dummies(ctx, b == "fdh_cum", rows).values)
    return np.hstack(parts) if parts else np.zeros((rows.size, 0))


def stochastic_rows(spec: FeatureSpec, ctx: CalendarContext, rows, lagged: Lagged) -> np.ndarray:
    """Lag and interaction columns; row count follows the lagged vectors."""
    rows = np.asarray(rows)
    parts = []
    blocks = set(spec.blocks)
    if "lags" in blocks:
        parts.append(lag_columns(spec.lags, lagged, spec.lag_prefix).values)
    if {"lag_hod", "lag_hd"} & blocks:
        hod_b, hd_b = interaction_columns(
            spec.interaction_lags, lagged, hod_full(ctx, rows),
            ctx.holidays[rows].astype(float), spec.lag_prefix,
        )
        if "lag_hod" in blocks:
            parts.append(hod_b.values)
        if "lag_hd" in blocks:
            parts.append(hd_b.values)
    if not parts:
        return np.zeros((rows.size, 0))
    n = max(p.shape[0] for p in parts)
    return np.hstack([np.broadcast_to(p, (n, p.shape[1])) for p in parts])


def design_rows(spec: FeatureSpec, ctx: CalendarContext, rows, lagged: Lagged) -> np.ndarray:
    det = deterministic_rows(spec, ctx, rows)
    sto = stochastic_rows(spec, ctx, rows, lagged)
    n = max(det.shape[0], sto.shape[0])
    return np.hstack([np.broadcast_to(det, (n, det.shape[1])),
                      np.broadcast_to(sto, (n, sto.shape[1]))])


def build_matrix(spec: FeatureSpec, series: TimeSeries, ctx: CalendarContext,
                 start: int = 0, stop: int | None = None,
                 lag_source: np.ndarray | None = None,
                 target: np.ndarray | None = None) -> FeatureMatrix:
    """Assemble the design matrix for target indices in [start, stop).

    The lag source defaults to the demand values (mean spec); the variance
    spec passes squared residuals and its target explicitly, both indexed
    like `series` with NaN before the mean model's first row. A missing
    demand value anywhere in the window is an error; rows lacking lags are
    dropped from the front.
    """
    n = len(series)
    stop = n if stop is None else stop
    if len(ctx) < n or ctx.start != series.start:
        raise DimensionMismatch("calendar context does not cover the series",
                                series_length=n, context_length=len(ctx))
    source = series.values if lag_source is None else np.asarray(lag_source, float)
    y = series.values if target is None else np.asarray(target, float)
    if source.size != n or y.size != n:
        raise DimensionMismatch("lag source and target must align with the series")
    gaps = np.flatnonzero(np.isnan(series.values[start:stop]))
    if gaps.size:
        raise MissingInWindow(f"window [{start}, {stop}) has {gaps.size} missing values",
                              start=start, stop=stop, index=int(start + gaps[0]))

    valid = np.flatnonzero(~np.isnan(source[start:stop]))
    if valid.size == 0:
        raise MissingInWindow("window has no observed values", start=start, stop=stop)
    first = start + int(valid[0]) + spec.max_lag
    if spec.target == "variance":
        first = max(first, start + int(np.flatnonzero(~np.isnan(y[start:stop]))[0]))
    if first >= stop:
        raise SeriesTooShort(
            f"window [{start}, {stop}) cannot supply lag {spec.max_lag}",
            start=start, stop=stop, lag=spec.max_lag,
        )
    rows = np.arange(first, stop)
    X = design_rows(spec, ctx, rows, array_lagged(source, rows))
    X = np.ascontiguousarray(X)
    yy = y[rows].copy()
    if np.isnan(X).any() or np.isnan(yy).any():
        bad = rows[np.isnan(X).any(axis=1) | np.isnan(yy)][0]
        raise MissingInWindow(f"missing value affects row {bad}", index=int(bad))
    names = spec.column_names(ctx.calendar)
    return FeatureMatrix(names, X, yy, rows)
