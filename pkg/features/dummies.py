# features/dummies.py
"""Hour-of-day, hour-of-week and holiday indicator blocks.

Base categories are dropped so no block is collinear with the constant:
hour 0 for HoD/HoW/FWH/FDH, and the always-on / last level for HoD^cum.
"""
import numpy as np

from features.spec import FeatureBlock
from models import FIXED_DATE, FIXED_WEEKDAY, CalendarContext


def _rows(ctx: CalendarContext, rows) -> np.ndarray:
    return np.arange(len(ctx)) if rows is None else np.asarray(rows)


def hod_dummies(ctx: CalendarContext, cumulative: bool = False, rows=None) -> FeatureBlock:
    hod = ctx.hour_of_day[_rows(ctx, rows)]
    if cumulative:
        levels = np.arange(2, 24)
        values = hod[:, None] >= (levels - 1)[None, :]
        names = tuple(f"HoDcum_{i}" for i in levels)
    else:
        levels = np.arange(2, 25)
        values = hod[:, None] == (levels - 1)[None, :]
        names = tuple(f"HoD_{i}" for i in levels)
    return FeatureBlock(names, values.astype(float))


def hod_full(ctx: CalendarContext, rows=None) -> np.ndarray:
    """All 24 hour indicators, column k-1 for HoD_k; used by interactions."""
    hod = ctx.hour_of_day[_rows(ctx, rows)]
    return (hod[:, None] == np.arange(24)[None, :]).astype(float)


def how_dummies(ctx: CalendarContext, rows=None) -> FeatureBlock:
    how = ctx.hour_of_week[_rows(ctx, rows)]
    levels = np.arange(2, 169)
    values = how[:, None] == (levels - 1)[None, :]
    return FeatureBlock(tuple(f"HoW_{i}" for i in levels), values.astype(float))


def _class_hours(ctx, rows, holiday_class, cumulative, stem) -> FeatureBlock:
    active = ctx.class_mask(holiday_class)[rows]
    hod = ctx.hour_of_day[rows]
    levels = np.arange(2, 25)
    if cumulative:
        values = hod[:, None] >= (levels - 1)[None, :]
        stem += "cum"
    else:
        values = hod[:, None] == (levels - 1)[None, :]
    values = values & active[:, None]
    return FeatureBlock(tuple(f"{stem}_{i}" for i in levels), values.astype(float))


def hd_dummies(ctx: CalendarContext, rows=None) -> FeatureBlock:
    rows = _rows(ctx, rows)
    names = tuple(f"HD_{k}" for k in range(1, ctx.calendar.P + 1))
    return FeatureBlock(names, ctx.holidays[rows].astype(float))


def fwh_dummies(ctx: CalendarContext, cumulative: bool, rows=None) -> FeatureBlock:
    return _class_hours(ctx, _rows(ctx, rows), FIXED_WEEKDAY, cumulative, "FWH")


def fdh_dummies(ctx: CalendarContext, cumulative: bool, rows=None) -> FeatureBlock:
    return _class_hours(ctx, _rows(ctx, rows), FIXED_DATE, cumulative, "FDH")


def holiday_dummies(ctx: CalendarContext, cumulative: bool = True, rows=None) -> FeatureBlock:
    """HD block followed by the FWH and FDH hourly blocks of the present classes."""
    rows = _rows(ctx, rows)
    blocks = []
    if ctx.calendar.P:
        blocks.append(hd_dummies(ctx, rows))
    if ctx.calendar.W:
        blocks.append(fwh_dummies(ctx, cumulative, rows))
    if ctx.calendar.V:
        blocks.append(fdh_dummies(ctx, cumulative, rows))
    names = tuple(n for b in blocks for n in b.names)
    values = (np.hstack([b.values for b in blocks]) if blocks
              else np.zeros((rows.size, 0)))
    return FeatureBlock(names, values)
