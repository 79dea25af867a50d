# app.py
import json
import logging
import os
import sys

import click
import numpy as np

from config import Config, load_study_config
from errors import ConfigurationError, DataError, HydrocastError


# ---------- helpers ----------
def ensure_dir(path: str):
    os.makedirs(path, exist_ok=True)


def echo_json(payload: dict):
    click.echo(json.dumps(payload, indent=2, sort_keys=True))


def configure_logging(level: str | None = None):
    logging.basicConfig(
        level=(level or Config.LOG_LEVEL).upper(),
        format="%(asctime)s - %(levelname)s - %(name)s - %(message)s",
    )


def load_series_and_context(data: str, holidays: str | None, base_year: int):
    from series.calendar import build_calendar, default_calendar, load_holidays
    from series.ingest import ingest_csv

    series = ingest_csv(data)
    calendar = load_holidays(holidays) if holidays else default_calendar()
    ctx = build_calendar(series.start, len(series), calendar, base_year)
    return series, ctx


# ---------- CLI factory ----------
def create_cli() -> click.Group:
    @click.group()
    @click.option("--log-level", default=None, help="Overrides HYDROCAST_LOG_LEVEL.")
    def cli(log_level):
        """Probabilistic short-term water demand forecasting."""
        configure_logging(log_level)

    # ----- ingest -----
    @cli.command("ingest")
    @click.argument("data", type=click.Path(exists=True, dir_okay=False))
    @click.option("--output", "-o", type=click.Path(dir_okay=False), default=None,
                  help="Write the gap-filled hourly series here.")
    @click.option("--utc-offset", type=float, default=None,
                  help="Fixed offset (hours) for timezone-aware timestamps.")
    def ingest(data, output, utc_offset):
        """Validate a demand CSV and materialize gaps."""
        from series.ingest import export_csv, ingest_csv

        series = ingest_csv(data, utc_offset_hours=utc_offset)
        if output:
            export_csv(series, output)
        echo_json({
            "length": len(series),
            "start": str(series.start),
            "end": str(series.timestamp(len(series) - 1)),
            "missing": int(series.missing.sum()),
        })

    # ----- fit -----
    @cli.command("fit")
    @click.option("--data", required=True, type=click.Path(exists=True, dir_okay=False))
    @click.option("--holidays", type=click.Path(exists=True, dir_okay=False), default=None)
    @click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
                  default=None, help="Study file; only the LASSO_* and VARIANCE_TARGET keys are used.")
    @click.option("--start", type=int, default=0, help="First index of the fit window.")
    @click.option("--stop", type=int, default=None, help="End (exclusive) of the fit window.")
    @click.option("--base-year", type=int, default=Config.BASE_YEAR)
    @click.option("--output-dir", default=Config.OUTPUT_DIR)
    def fit(data, holidays, config_path, start, stop, base_year, output_dir):
        """Fit the ARX-ARCH lasso model and write it with coefficient reports."""
        from benchmarks.lasso_arx import LassoARXForecaster
        from demand.serialize import save_model
        from lasso.report import family_summary, write_coefficient_report

        settings = _model_settings(config_path)
        series, ctx = load_series_and_context(data, holidays, base_year)
        if stop is not None:
            series = series.window(0, stop)
        forecaster = LassoARXForecaster(settings).fit(series, ctx, start)
        model = forecaster.model

        ensure_dir(output_dir)
        save_model(model, os.path.join(output_dir, "model.json"))
        for part in ("mean", "variance"):
            lasso_fit = getattr(model, part).fit
            write_coefficient_report(lasso_fit, os.path.join(output_dir, f"{part}_coefficients.csv"))
            family_summary(lasso_fit).to_csv(os.path.join(output_dir, f"{part}_families.csv"),
                                             index=False)
        echo_json({
            "model": os.path.join(output_dir, "model.json"),
            "mean_active": len(model.mean.active_set),
            "mean_features": len(model.mean.fit.names),
            "variance_active": len(model.variance.active_set),
            "variance_features": len(model.variance.fit.names),
        })

    # ----- forecast -----
    @cli.command("forecast")
    @click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False))
    @click.option("--data", required=True, type=click.Path(exists=True, dir_okay=False))
    @click.option("--origin", type=int, default=None,
                  help="Index of the first forecast hour (default: end of data).")
    @click.option("--horizon", "-H", type=int, default=Config.HORIZON)
    @click.option("--members", "-M", type=int, default=Config.ENSEMBLE_SIZE)
    @click.option("--seed", type=int, required=True)
    @click.option("--mode", "modes", multiple=True, default=("standard",),
                  help="Dependence mode(s) to export.")
    @click.option("--floor-at-zero", is_flag=True, default=False)
    @click.option("--output-dir", default=Config.OUTPUT_DIR)
    def forecast(model_path, data, origin, horizon, members, seed, modes, floor_at_zero, output_dir):
        """Simulate an ensemble from a fitted model."""
        from demand.serialize import load_model
        from ensemble.export import (
            fan_chart_frame,
            path_correlation_frame,
            write_ensemble_csv,
            write_ensemble_summary,
        )
        from ensemble.rearrange import rearrange
        from ensemble.simulate import simulate
        from series.calendar import build_calendar
        from series.ingest import ingest_csv

        model = load_model(model_path)
        series = ingest_csv(data)
        origin = len(series) if origin is None else origin
        ctx = build_calendar(series.start, max(len(series), origin + horizon),
                             model.calendar, model.base_year)
        ens = simulate(model, series.window(0, origin), ctx, horizon, members, seed,
                       floor_at_zero)

        ensure_dir(output_dir)
        written = []
        for mode in modes:
            variant = rearrange(ens, mode)
            stem = os.path.join(output_dir, f"ensemble_{origin}_{mode}")
            write_ensemble_csv(variant, stem + ".csv")
            write_ensemble_summary(variant, stem + ".json")
            fan_chart_frame(variant).to_csv(stem + "_fan.csv", index=False)
            path_correlation_frame(variant).to_csv(stem + "_rankcorr.csv", index=False)
            written.append(stem + ".csv")
        echo_json({"origin": origin, "H": horizon, "M": members, "files": written})

    # ----- study -----
    @cli.command("study")
    @click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False))
    @click.option("--seed", type=int, required=True)
    @click.option("--output-dir", default=None)
    @click.option("--n-origins", type=int, default=None)
    @click.option("--ensemble-size", type=int, default=None)
    @click.option("--workers", type=int, default=None)
    def study(config_path, seed, output_dir, n_origins, ensemble_size, workers):
        """Rolling-origin study over all configured models."""
        from study.runner import run_study

        cfg = load_study_config(config_path, seed=seed, output_dir=output_dir,
                                n_origins=n_origins, ensemble_size=ensemble_size,
                                workers=workers)
        result = run_study(cfg)
        echo_json({
            "output_dir": cfg.output_dir,
            "complete": result.complete,
            "summary": result.report.summary.to_dict(orient="records"),
        })

    # ----- storage -----
    @cli.command("storage")
    @click.option("--config", "config_path", required=True, type=click.Path(exists=True, dir_okay=False))
    @click.option("--seed", type=int, required=True)
    @click.option("--capacity", type=float, default=Config.STORAGE_CAPACITY,
                  help="Storage capacity in cubic metres.")
    @click.option("--window", type=int, default=Config.STORAGE_WINDOW,
                  help="Hours of cumulative demand.")
    @click.option("--output-dir", default=None)
    def storage(config_path, seed, capacity, window, output_dir):
        """Exceedance probabilities of a storage capacity per dependence mode."""
        from study.storage import run_storage_analysis

        cfg = load_study_config(config_path, seed=seed, output_dir=output_dir)
        table = run_storage_analysis(cfg, capacity, window)
        echo_json({"output_dir": cfg.output_dir,
                   "probabilities": table[["mode", "probability"]].to_dict(orient="records")})

    # ----- simulate-data -----
    @cli.command("simulate-data")
    @click.option("--process", "process_path", required=True,
                  type=click.Path(exists=True, dir_okay=False))
    @click.option("--seed", type=int, required=True)
    @click.option("--output", "-o", required=True, type=click.Path(dir_okay=False))
    def simulate_data(process_path, seed, output):
        """Generate a synthetic demand series from a process file."""
        from series.ingest import export_csv
        from series.synthetic import load_process, simulate_synthetic

        series = simulate_synthetic(load_process(process_path), seed)
        export_csv(series, output)
        echo_json({"output": output, "length": len(series), "start": str(series.start)})

    # ----- score -----
    @cli.command("score")
    @click.option("--ensemble", "ensemble_path", required=True,
                  type=click.Path(exists=True, dir_okay=False))
    @click.option("--data", required=True, type=click.Path(exists=True, dir_okay=False))
    @click.option("--levels", type=int, default=Config.QUANTILE_LEVELS,
                  help="Number of equidistant quantile levels.")
    def score(ensemble_path, data, levels):
        """Score a long-format ensemble CSV against the observed demand."""
        from ensemble.analysis import quantile_grid
        from ensemble.export import read_ensemble_csv
        from scoring.report import score_ensemble
        from series.ingest import ingest_csv
        from study.outputs import json_safe

        ens = read_ensemble_csv(ensemble_path)
        series = ingest_csv(data)
        actuals = series.values[ens.origin:ens.origin + ens.H]
        if actuals.size != ens.H or np.isnan(actuals).any():
            raise DataError("observed demand does not cover the ensemble horizon",
                            origin=ens.origin, H=ens.H)
        scores = score_ensemble(ens.paths, actuals, quantile_grid(levels), ens.origin)
        row = scores.row()
        row.pop("model")
        echo_json(json_safe(row))

    return cli


def _model_settings(config_path: str | None) -> dict:
    if config_path is None:
        return {}
    from dotenv import dotenv_values

    from config import MODEL_KEYS

    raw = {k.upper(): v for k, v in dotenv_values(config_path).items() if v is not None}
    return {k: raw[k] for k in MODEL_KEYS if k in raw}


cli = create_cli()


def main(argv=None) -> int:
    """Run the CLI and map errors to exit codes (1 config, 2 data, 3 numerical)."""
    try:
        cli.main(args=argv, prog_name="hydrocast", standalone_mode=False)
    except HydrocastError as e:
        click.echo(json.dumps(e.to_dict(), sort_keys=True), err=True)
        return e.exit_code
    except click.UsageError as e:
        click.echo(json.dumps({"error": e.format_message(), "type": "UsageError",
                               "context": {}}), err=True)
        return ConfigurationError.exit_code
    except click.exceptions.Abort:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
