from lasso.path import LassoFit, bic_scores, fit_lasso, fit_path, lambda_path, select_bic
from lasso.report import coefficient_table, family_summary, write_coefficient_report
from lasso.solver import LassoConfig, coordinate_descent, kkt_violation, objective
from lasso.standardize import ScalingRecord, standardize

__all__ = [
    "LassoFit",
    "bic_scores",
    "fit_lasso",
    "fit_path",
    "lambda_path",
    "select_bic",
    "coefficient_table",
    "family_summary",
    "write_coefficient_report",
    "LassoConfig",
    "coordinate_descent",
    "kkt_violation",
    "objective",
    "ScalingRecord",
    "standardize",
]
