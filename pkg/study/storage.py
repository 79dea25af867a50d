# study/storage.py
"""Probability that cumulative demand over a window exceeds a storage capacity."""
import logging
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pandas as pd

from config import Config, StudyConfig, validate_study_config
from ensemble.analysis import exceedance_probability
from ensemble.rearrange import rearrange
from errors import WindowExceedsHorizon
from models import DEPENDENCE_MODES
from study import outputs
from study.runner import actuals_at, forecast_origin, load_study_data

logger = logging.getLogger(__name__)


def run_storage_analysis(cfg: StudyConfig, capacity: float = Config.STORAGE_CAPACITY,
                         window: int = Config.STORAGE_WINDOW) -> pd.DataFrame:
    """Exceedance probability of the first model per dependence mode, averaged
    over the study origins, next to the share of origins whose realized
    demand exceeded the capacity."""
    validate_study_config(cfg)
    H = cfg.effective_horizon
    if window < 1 or window > H:
        raise WindowExceedsHorizon(f"window of {window} hours exceeds the horizon {H}",
                                   window=window, H=H)
    data = load_study_data(cfg)
    model = cfg.models[0]

    def per_origin(origin: int) -> list[float]:
        ens, _ = forecast_origin(cfg, data, model, origin)
        return [exceedance_probability(rearrange(ens, mode), capacity, window)
                for mode in DEPENDENCE_MODES]

    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        probs = np.array(list(pool.map(per_origin, data.plan.origins)))

    truth = np.mean([actuals_at(data, o, window).sum() > capacity
                     for o in data.plan.origins])
    table = pd.DataFrame({
        "mode": [*DEPENDENCE_MODES, "truth"],
        "probability": [*probs.mean(axis=0).tolist(), float(truth)],
    })
    table.insert(0, "model", model)
    table["capacity"] = capacity
    table["window"] = window
    logger.info("storage analysis: capacity %.6g over %d h, truth %.4f",
                capacity, window, truth)

    outputs.ensure_dir(cfg.output_dir)
    path = outputs.write_csv(table, os.path.join(cfg.output_dir, "storage.csv"))
    outputs.write_manifest(cfg.output_dir, [path], complete=True, cfg=cfg,
                           name="storage_manifest.json")
    return table
