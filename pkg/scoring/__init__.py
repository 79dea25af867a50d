from scoring.dm import DMResult, dm_test
from scoring.point import mae, ns, point_forecasts, rmse
from scoring.probabilistic import crps_ensemble, energy_score, gaussian_crps, interval_coverage, pinball
from scoring.report import OriginScores, ScoreReport, build_report, score_ensemble

__all__ = [
    "DMResult",
    "dm_test",
    "mae",
    "ns",
    "point_forecasts",
    "rmse",
    "crps_ensemble",
    "energy_score",
    "gaussian_crps",
    "interval_coverage",
    "pinball",
    "OriginScores",
    "ScoreReport",
    "build_report",
    "score_ensemble",
]
