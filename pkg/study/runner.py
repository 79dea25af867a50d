# study/runner.py
"""Rolling-origin study: refit every model at every origin, forecast, score."""
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from benchmarks.registry import make_forecaster
from config import StudyConfig, study_model_names, validate_study_config
from ensemble.analysis import quantile_grid, rank_correlation
from ensemble.export import correlation_frame, cumsum_histogram, fan_chart_frame
from ensemble.rearrange import rearrange
from errors import DataError, HydrocastError
from models import CalendarContext, EnsembleForecast, RollingStudyPlan, TimeSeries
from scoring.report import OriginScores, ScoreReport, build_report, score_ensemble
from series.calendar import build_calendar, default_calendar, load_holidays
from series.ingest import ingest_csv
from series.plan import make_study_plan
from study import outputs

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class StudyData:
    series: TimeSeries
    ctx: CalendarContext
    plan: RollingStudyPlan


@dataclass(eq=False)
class TaskResult:
    origin: int
    model: str
    scores: list[OriginScores] = field(default_factory=list)
    ensembles: dict[str, EnsembleForecast] = field(default_factory=dict)
    correlations: dict[str, np.ndarray] = field(default_factory=dict)
    error: HydrocastError | None = None


@dataclass(frozen=True, eq=False)
class StudyResult:
    report: ScoreReport | None
    files: list[str]
    complete: bool


def variant_name(model: str, mode: str) -> str:
    return model if mode == "standard" else f"{model}[{mode}]"


def load_study_data(cfg: StudyConfig) -> StudyData:
    series = ingest_csv(cfg.data_path)
    calendar = load_holidays(cfg.holidays_path) if cfg.holidays_path else default_calendar()
    ctx = build_calendar(series.start, len(series), calendar, cfg.base_year)
    plan = make_study_plan(len(series), cfg.calib_length, cfg.n_origins,
                           cfg.effective_horizon, cfg.ensemble_size, cfg.window_length)
    logger.info("study data: %d hours from %s, %d origins, H=%d",
                len(series), series.start, len(plan.origins), plan.horizon)
    return StudyData(series, ctx, plan)


def actuals_at(data: StudyData, origin: int, H: int) -> np.ndarray:
    y = data.series.values[origin:origin + H]
    if np.isnan(y).any():
        raise DataError(f"actuals after origin {origin} contain missing values",
                        origin=origin)
    return y


def forecast_origin(cfg: StudyConfig, data: StudyData, model: str,
                    origin: int) -> tuple[EnsembleForecast, int]:
    """Fit `model` on the window ending before `origin` and forecast from it."""
    history = data.series.window(0, origin)
    start = 0 if cfg.window_length is None else origin - cfg.window_length
    forecaster = make_forecaster(model, cfg.model_settings).fit(history, data.ctx, start)
    ens = forecaster.forecast(history, data.ctx, cfg.effective_horizon,
                              cfg.ensemble_size, cfg.seed)
    return ens, forecaster.parameter_count


def _run_task(cfg: StudyConfig, data: StudyData, grid: np.ndarray, origin: int,
              model: str, primary: bool, keep: bool) -> TaskResult:
    result = TaskResult(origin, model)
    try:
        ens, params = forecast_origin(cfg, data, model, origin)
        actuals = actuals_at(data, origin, ens.H)
        modes = cfg.dependence_modes if primary else ("standard",)
        for mode in modes:
            variant = rearrange(ens, mode)
            name = variant_name(model, mode)
            result.scores.append(score_ensemble(variant.paths, actuals, grid,
                                                origin, name, params))
            if primary:
                result.correlations[name] = rank_correlation(variant.paths)
            if keep:
                result.ensembles[name] = variant
        logger.info("origin %d %s: ES %.4g", origin, model, result.scores[0].es)
    except HydrocastError as e:
        logger.error("origin %d %s failed: %s", origin, model, e.message)
        result.error = e.with_context(origin=origin, model=model)
    return result


def run_tasks(cfg: StudyConfig, data: StudyData, grid: np.ndarray) -> list[TaskResult]:
    """Origins x models on a bounded pool; results come back in task order."""
    first = data.plan.origins[0]
    tasks = [(origin, model, i == 0, origin == first)
             for origin in data.plan.origins
             for i, model in enumerate(cfg.models)]
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(lambda t: _run_task(cfg, data, grid, *t), tasks))


def run_study(cfg: StudyConfig) -> StudyResult:
    validate_study_config(cfg)
    data = load_study_data(cfg)
    grid = quantile_grid(cfg.quantile_levels)
    results = run_tasks(cfg, data, grid)

    failures = [r for r in results if r.error is not None]
    scores = [s for r in results if r.error is None for s in r.scores]
    names = study_model_names(cfg)
    report = build_report(scores, names, grid, cfg.reference_model) if scores else None

    out_dir = cfg.output_dir
    outputs.ensure_dir(out_dir)
    files = _write_study_files(out_dir, cfg, data, report, results)
    outputs.write_manifest(
        out_dir, files, complete=not failures,
        failures=[{"origin": r.origin, "model": r.model, **r.error.to_dict()} for r in failures],
        cfg=cfg,
    )
    if failures:
        logger.error("%d of %d tasks failed; partial results in %s",
                     len(failures), len(results), out_dir)
        raise failures[0].error
    logger.info("study finished: %d tasks, reports in %s", len(results), out_dir)
    return StudyResult(report, files, True)


def _write_study_files(out_dir: str, cfg: StudyConfig, data: StudyData,
                       report: ScoreReport | None, results: list[TaskResult]) -> list[str]:
    def path(name: str) -> str:
        return os.path.join(out_dir, name)

    files = []
    if report is not None:
        files += [
            outputs.write_csv(report.per_origin, path("per_origin.csv")),
            outputs.write_csv(report.per_horizon, path("per_horizon.csv")),
            outputs.write_csv(report.per_quantile, path("per_quantile.csv")),
            outputs.write_csv(report.summary, path("summary.csv")),
            outputs.write_json({
                "aggregate": report.aggregate.to_dict(orient="records"),
                "dm": report.dm,
                "reference_model": cfg.reference_model,
                "origins": len(data.plan.origins),
                "horizon": cfg.effective_horizon,
                "ensemble_size": cfg.ensemble_size,
            }, path("aggregate.json")),
        ]

    ok = [r for r in results if r.error is None]
    corr = {}
    for r in ok:
        for name, rho in r.correlations.items():
            corr.setdefault(name, []).append(rho)
    if corr:
        frames = []
        for name, mats in corr.items():
            df = correlation_frame(np.nanmean(np.stack(mats), axis=0))
            df.insert(0, "model", name)
            frames.append(df)
        files.append(outputs.write_csv(pd.concat(frames, ignore_index=True),
                                       path("rank_correlation_paths.csv")))

    H = cfg.effective_horizon
    realized = [data.series.values[o:o + H] for o in data.plan.origins]
    if len(realized) >= 3 and H > 1:
        files.append(outputs.write_csv(correlation_frame(rank_correlation(np.vstack(realized))),
                                       path("rank_correlation_actuals.csv")))

    fans, hists = [], []
    window = min(H, 24)
    for r in ok:
        for name, ens in r.ensembles.items():
            fan = fan_chart_frame(ens)
            fan.insert(0, "model", name)
            fans.append(fan)
            if r.model == cfg.models[0]:
                hist = cumsum_histogram(ens, window)
                hist.insert(0, "model", name)
                hists.append(hist)
    if fans:
        files.append(outputs.write_csv(pd.concat(fans, ignore_index=True), path("fan_chart.csv")))
    if hists:
        files.append(outputs.write_csv(pd.concat(hists, ignore_index=True),
                                       path("cumsum_histogram.csv")))
    return files
