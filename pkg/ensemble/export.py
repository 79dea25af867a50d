# ensemble/export.py
"""CSV/JSON export of ensembles and their plot data."""
import json

import numpy as np
import pandas as pd

from ensemble.analysis import cumulative_demand, empirical_quantiles, rank_correlation
from errors import DataError
from models import EnsembleForecast

FAN_LEVELS = (0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95)


def ensemble_frame(ens: EnsembleForecast) -> pd.DataFrame:
    """Long format: origin, path, h, value (path and h count from 1)."""
    M, H = ens.paths.shape
    return pd.DataFrame({
        "origin": np.full(M * H, ens.origin),
        "path": np.repeat(np.arange(1, M + 1), H),
        "h": np.tile(np.arange(1, H + 1), M),
        "value": ens.paths.ravel(),
    })


def write_ensemble_csv(ens: EnsembleForecast, path) -> None:
    ensemble_frame(ens).to_csv(path, index=False, float_format="%.17g")


def read_ensemble_csv(path, seed: int = 0) -> EnsembleForecast:
    df = pd.read_csv(path)
    if not {"origin", "path", "h", "value"} <= set(df.columns):
        raise DataError(f"{path} is not a long-format ensemble file", path=str(path))
    origins = df["origin"].unique()
    if origins.size != 1:
        raise DataError("ensemble file must hold exactly one origin", path=str(path))
    wide = df.pivot(index="path", columns="h", values="value").sort_index(axis=0).sort_index(axis=1)
    return EnsembleForecast(wide.to_numpy(dtype=float), int(origins[0]), seed)


def ensemble_summary(ens: EnsembleForecast, grid=FAN_LEVELS) -> dict:
    q = empirical_quantiles(ens, grid)
    return {
        "origin": ens.origin,
        "seed": ens.seed,
        "model": ens.model,
        "dependence_mode": ens.dependence_mode,
        "M": ens.M,
        "H": ens.H,
        "mean": ens.paths.mean(axis=0).tolist(),
        "quantiles": {f"{tau:g}": q[i].tolist() for i, tau in enumerate(grid)},
    }


def write_ensemble_summary(ens: EnsembleForecast, path, grid=FAN_LEVELS) -> None:
    with open(path, "w") as f:
        json.dump(ensemble_summary(ens, grid), f, indent=2, sort_keys=True)


def fan_chart_frame(ens: EnsembleForecast, grid=FAN_LEVELS) -> pd.DataFrame:
    q = empirical_quantiles(ens, grid)
    df = pd.DataFrame(q.T, columns=[f"q{tau:g}" for tau in grid])
    df.insert(0, "h", np.arange(1, ens.H + 1))
    df.insert(1, "mean", ens.paths.mean(axis=0))
    return df


def cumsum_histogram(ens: EnsembleForecast, window: int, bins: int = 50) -> pd.DataFrame:
    """Density histogram of per-path cumulative demand over `window` hours."""
    sums = cumulative_demand(ens, window)
    density, edges = np.histogram(sums, bins=bins, density=True)
    return pd.DataFrame({
        "dependence_mode": ens.dependence_mode,
        "bin_left": edges[:-1],
        "bin_right": edges[1:],
        "density": density,
    })


def correlation_frame(rho: np.ndarray) -> pd.DataFrame:
    H = rho.shape[0]
    i, j = np.meshgrid(np.arange(1, H + 1), np.arange(1, H + 1), indexing="ij")
    return pd.DataFrame({"h1": i.ravel(), "h2": j.ravel(), "rho": rho.ravel()})


def path_correlation_frame(ens: EnsembleForecast) -> pd.DataFrame:
    return correlation_frame(rank_correlation(ens.paths))
