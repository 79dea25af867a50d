# series/calendar.py
"""Holiday rules and calendar context construction.

Rule syntax:
    MM-DD             fixed date (e.g. 12-25)
    easter+N          N days after Easter Sunday (also easter-N)
    <wd>+<n>/MM       n-th weekday of month MM (e.g. thu+4/11); <wd>-1/MM is the last
"""
import datetime as dt
import re

import numpy as np
import pandas as pd
from dateutil.easter import easter
from dateutil.relativedelta import relativedelta, MO, TU, WE, TH, FR, SA, SU

from errors import DataError
from models import (
    FIXED_DATE,
    FIXED_WEEKDAY,
    S_ANNUAL,
    CalendarContext,
    Holiday,
    HolidayCalendar,
)

_FIXED_DATE_RE = re.compile(r"^(\d{2})-(\d{2})$")
_EASTER_RE = re.compile(r"^easter([+-]\d+)?$")
_WEEKDAY_RE = re.compile(r"^(mon|tue|wed|thu|fri|sat|sun)([+-]\d)/(\d{2})$")
_WEEKDAYS = {"mon": MO, "tue": TU, "wed": WE, "thu": TH, "fri": FR, "sat": SA, "sun": SU}

# Default calendar: the nationwide German public holidays plus Corpus Christi and
# All Saints' Day (North Rhine-Westphalia), which gives P=11, W=5, V=6. This is an
# assumption; the source data's federal state is unknown.
DEFAULT_HOLIDAYS = (
    Holiday("New Year's Day", "01-01", FIXED_DATE),
    Holiday("Good Friday", "easter-2", FIXED_WEEKDAY),
    Holiday("Easter Monday", "easter+1", FIXED_WEEKDAY),
    Holiday("Labour Day", "05-01", FIXED_DATE),
    Holiday("Ascension Day", "easter+39", FIXED_WEEKDAY),
    Holiday("Whit Monday", "easter+50", FIXED_WEEKDAY),
    Holiday("Corpus Christi", "easter+60", FIXED_WEEKDAY),
    Holiday("German Unity Day", "10-03", FIXED_DATE),
    Holiday("All Saints' Day", "11-01", FIXED_DATE),
    Holiday("Christmas Day", "12-25", FIXED_DATE),
    Holiday("Boxing Day", "12-26", FIXED_DATE),
)


def default_calendar() -> HolidayCalendar:
    return HolidayCalendar(DEFAULT_HOLIDAYS)


def rule_class(rule: str) -> str:
    rule = rule.strip().lower()
    if _FIXED_DATE_RE.match(rule):
        return FIXED_DATE
    if _EASTER_RE.match(rule) or _WEEKDAY_RE.match(rule):
        return FIXED_WEEKDAY
    raise DataError(f"unrecognized holiday rule {rule!r}", rule=rule)


def holiday_date(rule: str, year: int) -> dt.date | None:
    """Date of a rule in `year`; None when the date does not exist (02-29)."""
    rule = rule.strip().lower()
    if m := _FIXED_DATE_RE.match(rule):
        try:
            return dt.date(year, int(m.group(1)), int(m.group(2)))
        except ValueError:
            return None
    if m := _EASTER_RE.match(rule):
        return easter(year) + dt.timedelta(days=int(m.group(1) or 0))
    if m := _WEEKDAY_RE.match(rule):
        wd, ordinal, month = m.group(1), int(m.group(2)), int(m.group(3))
        if ordinal > 0:
            first = dt.date(year, month, 1)
            return first + relativedelta(weekday=_WEEKDAYS[wd](ordinal))
        last = dt.date(year, month, 1) + relativedelta(months=1, days=-1)
        return last + relativedelta(weekday=_WEEKDAYS[wd](ordinal))
    raise DataError(f"unrecognized holiday rule {rule!r}", rule=rule)


def load_holidays(path) -> HolidayCalendar:
    """CSV with columns name,rule,class."""
    df = pd.read_csv(path, dtype=str, keep_default_na=False)
    missing = {"name", "rule", "class"} - set(df.columns)
    if missing:
        raise DataError(f"holiday file lacks columns {sorted(missing)}", path=str(path))
    holidays = []
    for i, row in df.iterrows():
        declared = row["class"].strip()
        derived = rule_class(row["rule"])
        if declared != derived:
            raise DataError(
                f"holiday {row['name']!r}: rule {row['rule']!r} implies {derived}, "
                f"file says {declared}",
                row=i + 2,
            )
        holidays.append(Holiday(row["name"].strip(), row["rule"].strip(), declared))
    return HolidayCalendar(tuple(holidays))


def build_calendar(start, length: int, calendar: HolidayCalendar | None = None,
                   base_year: int = 2015) -> CalendarContext:
    """Calendar context for `length` hours from `start`."""
    calendar = default_calendar() if calendar is None else calendar
    index = pd.date_range(pd.Timestamp(start), periods=length, freq="h")

    hod = index.hour.to_numpy()
    how = index.dayofweek.to_numpy() * 24 + hod

    anchor = pd.Timestamp(year=base_year, month=1, day=1)
    hours = (index - anchor) / pd.Timedelta(hours=1)
    position = np.mod(np.asarray(hours, dtype=float), S_ANNUAL)

    days = index.normalize()
    holidays = np.zeros((length, calendar.P), dtype=bool)
    if calendar.P:
        years = range(index[0].year, index[-1].year + 1)
        for k, h in enumerate(calendar.holidays):
            dates = [holiday_date(h.rule, y) for y in years]
            stamps = pd.DatetimeIndex([pd.Timestamp(d) for d in dates if d is not None])
            holidays[:, k] = days.isin(stamps)

    return CalendarContext(
        start=index[0],
        hour_of_day=hod,
        hour_of_week=how,
        position_in_year=position,
        holidays=holidays,
        calendar=calendar,
        base_year=base_year,
    )
