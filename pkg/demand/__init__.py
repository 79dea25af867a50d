from demand.model import (
    DemandModel,
    MeanModel,
    VarianceModel,
    fit_demand_model,
    fit_mean,
    fit_variance,
    mean_residuals,
    predict_mean_one_step,
    predict_variance,
    step_recursion,
)
from demand.serialize import load_model, model_from_dict, model_to_dict, save_model

__all__ = [
    "DemandModel",
    "MeanModel",
    "VarianceModel",
    "fit_demand_model",
    "fit_mean",
    "fit_variance",
    "mean_residuals",
    "predict_mean_one_step",
    "predict_variance",
    "step_recursion",
    "load_model",
    "model_from_dict",
    "model_to_dict",
    "save_model",
]
