# models.py
"""Shared data containers. Instances are immutable once built."""
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from errors import DataError

HOUR = pd.Timedelta(hours=1)
S_ANNUAL = 365.24 * 24  # 8765.76 hours

FIXED_WEEKDAY = "fixed_weekday"
FIXED_DATE = "fixed_date"
HOLIDAY_CLASSES = (FIXED_WEEKDAY, FIXED_DATE)

DEPENDENCE_MODES = ("standard", "comonotone", "countermonotone", "independent")


def _frozen(arr, dtype=float) -> np.ndarray:
    out = np.array(arr, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Hourly demand on a gap-free grid; missing hours are NaN."""

    values: np.ndarray
    start: pd.Timestamp

    def __post_init__(self):
        values = _frozen(self.values)
        if values.ndim != 1 or values.size < 1:
            raise DataError("time series needs at least one value")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "start", pd.Timestamp(self.start).floor("h"))

    def __len__(self) -> int:
        return self.values.size

    @property
    def index(self) -> pd.DatetimeIndex:
        return pd.date_range(self.start, periods=len(self), freq="h")

    @property
    def missing(self) -> np.ndarray:
        return np.isnan(self.values)

    def has_missing(self, start: int = 0, stop: int | None = None) -> bool:
        return bool(np.isnan(self.values[start:stop]).any())

    def timestamp(self, i: int) -> pd.Timestamp:
        return self.start + i * HOUR

    def window(self, start: int, stop: int) -> "TimeSeries":
        return TimeSeries(self.values[start:stop], self.timestamp(start))

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"timestamp": self.index, "demand": self.values})


@dataclass(frozen=True)
class Holiday:
    name: str
    rule: str
    holiday_class: str


@dataclass(frozen=True)
class HolidayCalendar:
    holidays: tuple[Holiday, ...] = ()

    def __post_init__(self):
        for h in self.holidays:
            if h.holiday_class not in HOLIDAY_CLASSES:
                raise DataError(
                    f"holiday {h.name!r} has unknown class {h.holiday_class!r}"
                )

    @property
    def P(self) -> int:
        return len(self.holidays)

    @property
    def W(self) -> int:
        return sum(h.holiday_class == FIXED_WEEKDAY for h in self.holidays)

    @property
    def V(self) -> int:
        return sum(h.holiday_class == FIXED_DATE for h in self.holidays)


@dataclass(frozen=True, eq=False)
class CalendarContext:
    """Calendar position of every index of an hourly grid.

    `holidays` is an (n, P) indicator matrix: a day may carry more than one
    holiday (e.g. Ascension falling on May 1st).
    """

    start: pd.Timestamp
    hour_of_day: np.ndarray
    hour_of_week: np.ndarray
    position_in_year: np.ndarray
    holidays: np.ndarray
    calendar: HolidayCalendar = field(default_factory=HolidayCalendar)
    base_year: int = 2015

    def __len__(self) -> int:
        return self.hour_of_day.size

    @property
    def day_of_week(self) -> np.ndarray:
        return self.hour_of_week // 24

    @property
    def is_holiday(self) -> np.ndarray:
        return self.holidays.any(axis=1)

    def class_mask(self, holiday_class: str) -> np.ndarray:
        cols = [i for i, h in enumerate(self.calendar.holidays)
                if h.holiday_class == holiday_class]
        if not cols:
            return np.zeros(len(self), dtype=bool)
        return self.holidays[:, cols].any(axis=1)


@dataclass(frozen=True)
class RollingStudyPlan:
    origins: tuple[int, ...]
    window_length: int
    horizon: int
    ensemble_size: int = 1000


@dataclass(frozen=True, eq=False)
class EnsembleForecast:
    """M simulated sample paths over H hours issued at `origin`."""

    paths: np.ndarray
    origin: int
    seed: int
    dependence_mode: str = "standard"
    model: str = ""

    def __post_init__(self):
        paths = _frozen(self.paths)
        if paths.ndim != 2 or paths.shape[0] < 1 or paths.shape[1] < 1:
            raise DataError("ensemble must be an M x H matrix with M, H >= 1")
        if np.isnan(paths).any():
            raise DataError("ensemble contains missing entries")
        object.__setattr__(self, "paths", paths)

    @property
    def M(self) -> int:
        return self.paths.shape[0]

    @property
    def H(self) -> int:
        return self.paths.shape[1]

    def replace(self, paths: np.ndarray, dependence_mode: str) -> "EnsembleForecast":
        return EnsembleForecast(paths, self.origin, self.seed,
                                dependence_mode, self.model)
