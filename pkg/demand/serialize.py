# demand/serialize.py
"""Self-describing JSON form of a fitted DemandModel."""
import json

import numpy as np

from demand.model import DemandModel, MeanModel, VarianceModel
from errors import ConfigurationError
from features.spec import FeatureSpec, LagSets, format_lags, parse_lags
from lasso.path import LassoFit
from models import Holiday, HolidayCalendar

FORMAT_VERSION = 1


def model_to_dict(model: DemandModel) -> dict:
    mean, var = model.mean, model.variance
    m0, m1 = mean.window
    return {
        "format": "hydrocast-demand-model",
        "version": FORMAT_VERSION,
        "base_year": model.base_year,
        "lag_sets": {
            "I": format_lags(model.lag_sets.I),
            "K": format_lags(model.lag_sets.K),
            "S": format_lags(model.lag_sets.S),
        },
        "calendar": [
            {"name": h.name, "rule": h.rule, "class": h.holiday_class}
            for h in model.calendar.holidays
        ],
        "mean": {
            "spec": mean.spec.to_text(),
            "window": [m0, m1],
            "coefficients": mean.coefficients,
            "fit": mean.fit.to_dict(),
            "residuals": mean.residuals[m0:m1].tolist(),
        },
        "variance": {
            "spec": var.spec.to_text(),
            "window": list(var.window),
            "target": var.target,
            "sigma_floor": var.sigma_floor,
            "coefficients": var.coefficients,
            "fit": var.fit.to_dict(),
            "sigma2": var.sigma2.tolist(),
            "innovations": var.innovations.tolist(),
        },
    }


def model_from_dict(d: dict) -> DemandModel:
    if d.get("format") != "hydrocast-demand-model":
        raise ConfigurationError("not a hydrocast demand model document")
    if d.get("version") != FORMAT_VERSION:
        raise ConfigurationError(f"unsupported model format version {d.get('version')}")

    m = d["mean"]
    m0, m1 = m["window"]
    residuals = np.full(m1, np.nan)
    residuals[m0:m1] = m["residuals"]
    mean = MeanModel(FeatureSpec.from_text(m["spec"]), LassoFit.from_dict(m["fit"]),
                     (m0, m1), residuals)

    v = d["variance"]
    variance = VarianceModel(
        FeatureSpec.from_text(v["spec"]), LassoFit.from_dict(v["fit"]),
        tuple(v["window"]), v["target"], float(v["sigma_floor"]),
        np.array(v["sigma2"], dtype=float), np.array(v["innovations"], dtype=float),
    )
    lag_sets = LagSets(*(parse_lags(d["lag_sets"][k]) for k in ("I", "K", "S")))
    calendar = HolidayCalendar(tuple(
        Holiday(h["name"], h["rule"], h["class"]) for h in d["calendar"]
    ))
    return DemandModel(mean, variance, lag_sets, calendar, int(d["base_year"]))


def save_model(model: DemandModel, path) -> None:
    with open(path, "w") as f:
        json.dump(model_to_dict(model), f, sort_keys=True)


def load_model(path) -> DemandModel:
    try:
        with open(path) as f:
            return model_from_dict(json.load(f))
    except (OSError, json.JSONDecodeError, KeyError) as e:
        raise ConfigurationError(f"cannot read model file {path}: {e}") from e
