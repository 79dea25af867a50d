# scoring/report.py
"""Per-origin scores and their reductions over origins, horizons and levels."""
import logging
from dataclasses import dataclass

import numpy as np
import pandas as pd

from ensemble.analysis import empirical_quantiles
from errors import DegenerateDifferential, InsufficientData, ZeroVarianceActuals
from scoring.dm import dm_test
from scoring.point import mae, ns, point_forecasts, rmse
from scoring.probabilistic import energy_score, interval_coverage, pinball

logger = logging.getLogger(__name__)

METRICS = ("es", "pb", "mae", "rmse", "ns", "coverage")
# metrics where smaller is better
LOWER_IS_BETTER = ("es", "pb", "mae", "rmse")


@dataclass(frozen=True, eq=False)
class OriginScores:
    origin: int
    model: str
    es: float
    pb: float
    mae: float
    rmse: float
    ns: float
    coverage: float
    abs_error: np.ndarray
    sq_error: np.ndarray
    pb_tau: np.ndarray
    pb_h: np.ndarray
    covered: np.ndarray
    parameters: int = 0

    def row(self) -> dict:
        return {"origin": self.origin, "model": self.model,
                **{m: getattr(self, m) for m in METRICS},
                "parameters": self.parameters}


def score_ensemble(paths: np.ndarray, actuals: np.ndarray, grid: np.ndarray,
                   origin: int = 0, model: str = "", parameters: int = 0,
                   coverage_level: float = 0.8,
                   es_max_members: int | None = None) -> OriginScores:
    paths = np.asarray(paths, dtype=float)
    y = np.asarray(actuals, dtype=float)
    median, mean = point_forecasts(paths)
    pb, pb_tau, pb_h = pinball(y, empirical_quantiles(paths, grid), grid)
    try:
        ns_value = ns(y, mean)
    except ZeroVarianceActuals:
        logger.warning("origin %d: constant actuals, NS left undefined", origin)
        ns_value = float("nan")
    covered = interval_coverage(paths, y, coverage_level)
    return OriginScores(
        origin=origin, model=model,
        es=energy_score(paths, y, max_members=es_max_members, seed=origin),
        pb=pb, mae=mae(y, median), rmse=rmse(y, mean), ns=ns_value,
        coverage=float(covered.mean()),
        abs_error=np.abs(y - median), sq_error=(y - mean) ** 2,
        pb_tau=pb_tau, pb_h=pb_h, covered=covered, parameters=parameters,
    )


@dataclass(frozen=True, eq=False)
class ScoreReport:
    per_origin: pd.DataFrame
    aggregate: pd.DataFrame
    per_horizon: pd.DataFrame
    per_quantile: pd.DataFrame
    dm: dict
    summary: pd.DataFrame


def improvement(values: pd.Series, reference: float, metric: str) -> pd.Series:
    """Percent improvement over the reference value (positive = better)."""
    if metric in LOWER_IS_BETTER:
        return 100.0 * (reference - values) / reference
    return 100.0 * (values - reference) / abs(reference)


def dm_matrix(per_origin: pd.DataFrame, models: list[str], metric: str = "es",
              alpha: float = 0.05) -> dict:
    """DM results for every ordered model pair on the per-origin `metric` loss."""
    wide = per_origin.pivot(index="origin", columns="model", values=metric)
    out: dict = {"metric": metric, "alpha": alpha, "pairs": {}}
    for a in models:
        row = {}
        for b in models:
            if a == b:
                continue
            if a not in wide or b not in wide:
                row[b] = None
                continue
            try:
                row[b] = dm_test(wide[a].to_numpy(), wide[b].to_numpy(), alpha).to_dict()
            except (DegenerateDifferential, InsufficientData) as e:
                logger.warning("DM %s vs %s skipped: %s", a, b, e)
                row[b] = None
        out["pairs"][a] = row
    return out


def build_report(scores: list[OriginScores], models: list[str], grid: np.ndarray,
                 reference: str) -> ScoreReport:
    """Reduce per-origin scores; `models` fixes the row order of every table."""
    per_origin = pd.DataFrame([s.row() for s in scores],
                              columns=["origin", "model", *METRICS, "parameters"])
    per_origin = per_origin.sort_values(["origin", "model"], kind="stable",
                                        key=_model_order(models)).reset_index(drop=True)

    aggregate = (per_origin.groupby("model", sort=False)[list(METRICS) + ["parameters"]]
                 .mean().reindex(models))

    horizon_rows, quantile_rows = [], []
    for m in models:
        mine = [s for s in scores if s.model == m]
        if not mine:
            continue
        abs_err = np.vstack([s.abs_error for s in mine])
        sq_err = np.vstack([s.sq_error for s in mine])
        pb_h = np.vstack([s.pb_h for s in mine])
        cov = np.vstack([s.covered for s in mine])
        for h in range(abs_err.shape[1]):
            horizon_rows.append({
                "model": m, "h": h + 1,
                "mae": float(abs_err[:, h].mean()),
                "rmse": float(np.sqrt(sq_err[:, h].mean())),
                "pb": float(pb_h[:, h].mean()),
                "coverage": float(cov[:, h].mean()),
            })
        pb_tau = np.vstack([s.pb_tau for s in mine]).mean(axis=0)
        quantile_rows += [{"model": m, "tau": float(t), "pb": float(v)}
                          for t, v in zip(grid, pb_tau)]

    summary = aggregate[["parameters", "es", "pb", "mae", "rmse", "ns", "coverage"]].copy()
    if reference in summary.index:
        for metric in ("es", "pb"):
            summary[f"{metric}_improvement_pct"] = improvement(
                summary[metric], float(summary.loc[reference, metric]), metric)
    summary = summary.reset_index()

    return ScoreReport(
        per_origin=per_origin,
        aggregate=aggregate.reset_index(),
        per_horizon=pd.DataFrame(horizon_rows, columns=["model", "h", "mae", "rmse", "pb", "coverage"]),
        per_quantile=pd.DataFrame(quantile_rows, columns=["model", "tau", "pb"]),
        dm=dm_matrix(per_origin, models),
        summary=summary,
    )


def _model_order(models: list[str]):
    rank = {m: i for i, m in enumerate(models)}

    def key(col: pd.Series) -> pd.Series:
        return col.map(rank) if col.name == "model" else col

    return key
