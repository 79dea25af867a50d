# series/ingest.py
import logging

import numpy as np
import pandas as pd

from errors import DuplicateTimestamp, NonHourlySpacing, UnparseableRow, DataError
from models import HOUR, TimeSeries

logger = logging.getLogger(__name__)

DEFAULT_SCHEMA = {"timestamp": "timestamp", "demand": "demand"}


def ingest_csv(path, schema: dict | None = None,
               utc_offset_hours: float | None = None) -> TimeSeries:
    """Read an hourly demand CSV onto a gap-free grid.

    Gaps become NaN. Timezone-aware timestamps are converted to the fixed
    offset `utc_offset_hours` (default UTC) and made naive.
    """
    schema = {**DEFAULT_SCHEMA, **(schema or {})}
    ts_col, val_col = schema["timestamp"], schema["demand"]

    df = pd.read_csv(path, dtype=str, keep_default_na=False)
    for col in (ts_col, val_col):
        if col not in df.columns:
            raise DataError(f"column {col!r} missing from {path}", path=str(path))
    if df.empty:
        raise DataError(f"{path} contains no rows", path=str(path))

    stamps = _parse_timestamps(df[ts_col], utc_offset_hours)
    values = _parse_values(df[val_col])
    return series_from_points(stamps, values)


def _parse_timestamps(col: pd.Series, utc_offset_hours) -> pd.DatetimeIndex:
    parsed = []
    for i, raw in enumerate(col):
        try:
            ts = pd.Timestamp(raw.strip())
        except (ValueError, TypeError):
            ts = pd.NaT
        if ts is pd.NaT or pd.isna(ts):
            # row numbers count the header as line 1
            raise UnparseableRow(f"unparseable timestamp {raw!r}", row=i + 2)
        if ts.tzinfo is not None:
            offset = pd.Timedelta(hours=utc_offset_hours or 0.0)
            ts = ts.tz_convert("UTC").tz_localize(None) + offset
        parsed.append(ts)
    return pd.DatetimeIndex(parsed)


def _parse_values(col: pd.Series) -> np.ndarray:
    out = np.empty(len(col))
    for i, raw in enumerate(col):
        raw = raw.strip()
        if raw == "" or raw.lower() in ("na", "nan"):
            out[i] = np.nan
            continue
        try:
            out[i] = float(raw)
        except ValueError as e:
            raise UnparseableRow(f"unparseable demand value {raw!r}", row=i + 2) from e
    return out


def series_from_points(stamps, values) -> TimeSeries:
    stamps = pd.DatetimeIndex(stamps)
    values = np.asarray(values, dtype=float)

    dup = stamps.duplicated()
    if dup.any():
        raise DuplicateTimestamp(
            f"duplicate timestamp {stamps[dup][0]}", timestamp=stamps[dup][0]
        )
    order = np.argsort(stamps.asi8, kind="stable")
    stamps, values = stamps[order], values[order]

    off_grid = (stamps - stamps[0].floor("h")) % HOUR != pd.Timedelta(0)
    if off_grid.any():
        raise NonHourlySpacing(
            f"timestamp {stamps[off_grid][0]} is not on the hourly grid",
            timestamp=stamps[off_grid][0],
        )

    n = int((stamps[-1] - stamps[0]) / HOUR) + 1
    grid = np.full(n, np.nan)
    pos = ((stamps - stamps[0]) / HOUR).astype(int)
    grid[pos] = values
    n_gaps = n - len(stamps)
    if n_gaps:
        logger.info("materialized %d missing hours", n_gaps)
    return TimeSeries(grid, stamps[0])


def export_csv(series: TimeSeries, path) -> None:
    frame = series.to_frame()
    frame["timestamp"] = frame["timestamp"].dt.strftime("%Y-%m-%dT%H:%M:%S")
    frame.to_csv(path, index=False, float_format=None, na_rep="")
