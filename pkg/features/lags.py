# features/lags.py
from typing import Callable

import numpy as np

from errors import SeriesTooShort
from features.dummies import hod_full
from features.spec import FeatureBlock
from models import CalendarContext, TimeSeries

Lagged = Callable[[int], np.ndarray]


def usable_rows(n: int, max_lag: int) -> np.ndarray:
    if max_lag >= n:
        raise SeriesTooShort(
            f"series of length {n} cannot supply lag {max_lag}", length=n, lag=max_lag
        )
    return np.arange(max_lag, n)


def array_lagged(values: np.ndarray, rows: np.ndarray) -> Lagged:
    """Lag lookup Y_{t-k} for the target indices `rows`."""
    values = np.asarray(values, dtype=float)

    def lagged(k: int) -> np.ndarray:
        return values[rows - k]

    return lagged


def lag_columns(lags, lagged: Lagged, prefix: str = "Y") -> FeatureBlock:
    cols = [np.asarray(lagged(k), dtype=float) for k in lags]
    n = cols[0].size if cols else 0
    values = np.column_stack(cols) if cols else np.zeros((n, 0))
    return FeatureBlock(tuple(f"{prefix}_lag{k}" for k in lags), values)


def interaction_columns(S, lagged: Lagged, hod: np.ndarray, hd: np.ndarray,
                        prefix: str = "Y") -> tuple[FeatureBlock, FeatureBlock]:
    """Y_{t-s}*HoD_k (k=1..24) and Y_{t-s}*HD_k blocks.

    `hod` is (n, 24) and `hd` (n, P); either may have a single row when the
    lagged values are per simulated path for one target hour.
    """
    hod_parts, hd_parts = [], []
    for s in S:
        y = np.asarray(lagged(s), dtype=float)[:, None]
        hod_parts.append(y * hod)
        hd_parts.append(y * hd)
    P = hd.shape[1]
    hod_names = tuple(f"{prefix}_lag{s}:HoD_{k}" for s in S for k in range(1, 25))
    hd_names = tuple(f"{prefix}_lag{s}:HD_{k}" for s in S for k in range(1, P + 1))
    n = max(hod.shape[0], hod_parts[0].shape[0]) if hod_parts else hod.shape[0]
    hod_vals = np.hstack(hod_parts) if hod_parts else np.zeros((n, 0))
    hd_vals = np.hstack(hd_parts) if hd_parts else np.zeros((n, 0))
    return FeatureBlock(hod_names, hod_vals), FeatureBlock(hd_names, hd_vals)


def lag_block(series: TimeSeries, lags) -> FeatureBlock:
    """Y_{t-k} for every k in `lags`, rows t = max(lags)..n-1."""
    rows = usable_rows(len(series), max(lags))
    return lag_columns(lags, array_lagged(series.values, rows))


def interaction_block(series: TimeSeries, ctx: CalendarContext, S) -> FeatureBlock:
    rows = usable_rows(len(series), max(S))
    hod_b, hd_b = interaction_columns(
        S, array_lagged(series.values, rows), hod_full(ctx, rows),
        ctx.holidays[rows].astype(float),
    )
    return FeatureBlock(hod_b.names + hd_b.names, np.hstack([hod_b.values, hd_b.values]))
