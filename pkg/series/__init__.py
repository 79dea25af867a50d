from series.calendar import build_calendar, default_calendar, load_holidays
from series.ingest import export_csv, ingest_csv, series_from_points
from series.plan import make_study_plan
from series.synthetic import SyntheticProcess, load_process, simulate_synthetic

__all__ = [
    "build_calendar",
    "default_calendar",
    "load_holidays",
    "export_csv",
    "ingest_csv",
    "series_from_points",
    "make_study_plan",
    "SyntheticProcess",
    "load_process",
    "simulate_synthetic",
]
