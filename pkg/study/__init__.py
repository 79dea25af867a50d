from study.runner import StudyResult, forecast_origin, load_study_data, run_study
from study.storage import run_storage_analysis

__all__ = [
    "StudyResult",
    "forecast_origin",
    "load_study_data",
    "run_study",
    "run_storage_analysis",
]
