import datetime as dt

import numpy as np
import pandas as pd
import pytest

from errors import (
    DataError,
    DuplicateTimestamp,
    InsufficientData,
    NegativeVarianceParams,
    NonHourlySpacing,
    UnparseableRow,
    UnstableProcess,
)
from models import FIXED_DATE, FIXED_WEEKDAY, HolidayCalendar
from series.calendar import build_calendar, default_calendar, holiday_date, load_holidays, rule_class
from series.ingest import export_csv, ingest_csv
from series.plan import make_study_plan
from series.synthetic import SyntheticProcess, load_process, simulate_synthetic


# ---------- ingestion ----------
def test_ingest_three_consecutive_hours(write_demand_csv):
    path = write_demand_csv([("2015-01-05 00:00", 10), ("2015-01-05 01:00", 11),
                             ("2015-01-05 02:00", 12)])
    series = ingest_csv(path)
    assert len(series) == 3
    np.testing.assert_array_equal(series.values, [10, 11, 12])
    assert series.start == pd.Timestamp("2015-01-05 00:00")


def test_ingest_materializes_gap_as_missing(write_demand_csv):
    path = write_demand_csv([("2015-01-05 00:00", 10), ("2015-01-05 02:00", 12)])
    series = ingest_csv(path)
    assert len(series) == 3
    assert np.isnan(series.values[1])
    assert series.has_missing()
    assert not series.has_missing(2, 3)


def test_ingest_sorts_unordered_rows(write_demand_csv):
    path = write_demand_csv([("2015-01-05 01:00", 11), ("2015-01-05 00:00", 10)])
    np.testing.assert_array_equal(ingest_csv(path).values, [10, 11])


def test_ingest_rejects_half_hour(write_demand_csv):
    path = write_demand_csv([("2015-01-05 00:00", 10), ("2015-01-05 00:30", 11)])
    with pytest.raises(NonHourlySpacing):
        ingest_csv(path)


def test_ingest_rejects_duplicates(write_demand_csv):
    path = write_demand_csv([("2015-01-05 00:00", 10), ("2015-01-05 00:00", 11)])
    with pytest.raises(DuplicateTimestamp):
        ingest_csv(path)


def test_ingest_reports_row_of_bad_value(write_demand_csv):
    path = write_demand_csv([("2015-01-05 00:00", 10), ("2015-01-05 01:00", "abc")])
    with pytest.raises(UnparseableRow) as info:
        ingest_csv(path)
    assert info.value.row == 3
    assert info.value.exit_code == 2


def test_ingest_blank_value_is_missing(write_demand_csv):
    path = write_demand_csv([("2015-01-05 00:00", 10), ("2015-01-05 01:00", "")])
    assert np.isnan(ingest_csv(path).values[1])


def test_ingest_converts_aware_timestamps(write_demand_csv):
    path = write_demand_csv([("2015-01-05T01:00:00+01:00", 10),
                             ("2015-01-05T02:00:00+01:00", 11)])
    assert ingest_csv(path).start == pd.Timestamp("2015-01-05 00:00")
    assert ingest_csv(path, utc_offset_hours=1).start == pd.Timestamp("2015-01-05 01:00")


def test_ingest_requires_columns(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("time,value\n2015-01-05 00:00,1\n")
    with pytest.raises(DataError):
        ingest_csv(path)


def test_export_keeps_gaps_empty(tmp_path, write_demand_csv):
    series = ingest_csv(write_demand_csv([("2015-01-05 00:00", 10), ("2015-01-05 02:00", 12)]))
    out = tmp_path / "out.csv"
    export_csv(series, out)
    lines = out.read_text().splitlines()
    assert lines[0] == "timestamp,demand"
    assert lines[2] == "2015-01-05T01:00:00,"


# ---------- study plan ----------
def test_plan_two_origins_span_the_range():
    plan = make_study_plan(100, 50, 2, 10)
    assert plan.origins == (50, 90)
    assert plan.window_length == 50


def test_plan_single_origin():
    assert make_study_plan(60, 50, 1, 10).origins == (50,)


def test_plan_too_short():
    with pytest.raises(InsufficientData):
        make_study_plan(55, 50, 1, 10)


def test_plan_spacing_is_nearly_equal():
    origins = np.array(make_study_plan(10_000, 2_000, 7, 24).origins)
    gaps = np.diff(origins)
    assert origins[0] == 2_000 and origins[-1] == 10_000 - 24
    assert gaps.max() - gaps.min() <= 1


def test_plan_window_must_fit():
    with pytest.raises(InsufficientData):
        make_study_plan(200, 50, 1, 10, window_length=60)


# ---------- holiday calendar ----------
def test_default_calendar_classes():
    cal = default_calendar()
    assert (cal.P, cal.W, cal.V) == (11, 5, 6)


@pytest.mark.parametrize("rule, year, expected", [
    ("12-25", 2015, dt.date(2015, 12, 25)),
    ("easter-2", 2015, dt.date(2015, 4, 3)),
    ("easter+1", 2016, dt.date(2016, 3, 28)),
    ("thu+4/11", 2015, dt.date(2015, 11, 26)),
    ("mon-1/05", 2015, dt.date(2015, 5, 25)),
    ("02-29", 2015, None),
])
def test_holiday_dates(rule, year, expected):
    assert holiday_date(rule, year) == expected


def test_rule_class():
    assert rule_class("01-01") == FIXED_DATE
    assert rule_class("easter+39") == FIXED_WEEKDAY
    with pytest.raises(DataError):
        rule_class("first monday")


def test_load_holidays_checks_declared_class(tmp_path):
    path = tmp_path / "holidays.csv"
    path.write_text("name,rule,class\nXmas,12-25,fixed_weekday\n")
    with pytest.raises(DataError):
        load_holidays(path)

    path.write_text("name,rule,class\nXmas,12-25,fixed_date\nEaster Monday,easter+1,fixed_weekday\n")
    cal = load_holidays(path)
    assert (cal.P, cal.W, cal.V) == (2, 1, 1)


def test_calendar_positions():
    ctx = build_calendar("2015-01-05 00:00", 48, HolidayCalendar())
    assert ctx.hour_of_day[5] == 5
    assert ctx.hour_of_week[0] == 0
    assert ctx.hour_of_week[25] == 25
    # four days after the 2015 anchor
    assert ctx.position_in_year[0] == pytest.approx(4 * 24)
    assert ctx.holidays.shape == (48, 0)


def test_calendar_marks_holidays_with_overlap():
    # Ascension Day 2008 fell on May 1st
    ctx = build_calendar("2008-05-01 00:00", 24, default_calendar())
    names = [h.name for h in ctx.calendar.holidays]
    assert ctx.holidays[0, names.index("Labour Day")]
    assert ctx.holidays[0, names.index("Ascension Day")]
    assert ctx.is_holiday.all()
    assert ctx.class_mask(FIXED_DATE).all() and ctx.class_mask(FIXED_WEEKDAY).all()


# ---------- synthetic processes ----------
def test_synthetic_is_deterministic():
    proc = SyntheticProcess(length=200, daily_amplitude=5.0)
    a = simulate_synthetic(proc, 1)
    b = simulate_synthetic(proc, 1)
    np.testing.assert_array_equal(a.values, b.values)
    assert not np.array_equal(a.values, simulate_synthetic(proc, 2).values)


def test_synthetic_ar1_autocorrelation():
    y = simulate_synthetic(SyntheticProcess(length=20_000, ar={1: 0.5}), 3).values
    rho = np.corrcoef(y[1:], y[:-1])[0, 1]
    assert rho == pytest.approx(0.5, abs=0.05)


def test_synthetic_arch_clusters_volatility():
    n = 20_000
    y = simulate_synthetic(SyntheticProcess(length=n, arch={1: 0.4}), 5).values
    e2 = (y - y.mean()) ** 2
    rho = np.corrcoef(e2[1:], e2[:-1])[0, 1]
    assert rho > 3 / np.sqrt(n)


def test_synthetic_rejects_bad_processes():
    with pytest.raises(UnstableProcess):
        simulate_synthetic(SyntheticProcess(length=10, ar={1: 1.2}), 0)
    with pytest.raises(UnstableProcess):
        simulate_synthetic(SyntheticProcess(length=10, arch={1: 0.6, 2: 0.5}), 0)
    with pytest.raises(NegativeVarianceParams):
        simulate_synthetic(SyntheticProcess(length=10, arch={1: -0.1}), 0)


def test_load_process(tmp_path):
    path = tmp_path / "process.env"
    path.write_text("LENGTH=48\nLEVEL=50\nAR=1:0.3,24:0.2\nARCH=1:0.1\nINNOVATION=student_t\n")
    proc = load_process(path)
    assert proc.length == 48 and proc.level == 50.0
    assert proc.ar == {1: 0.3, 24: 0.2}
    assert len(simulate_synthetic(proc, 0)) == 48
