from features.dummies import hod_dummies, how_dummies, holiday_dummies
from features.lags import interaction_block, lag_block
from features.matrix import build_matrix, design_rows, deterministic_rows, stochastic_rows
from features.spec import (
    FeatureBlock,
    FeatureMatrix,
    FeatureSpec,
    LagSets,
    SplineBasisConfig,
    mean_spec,
    variance_spec,
)
from features.splines import bspline_basis, periodic_basis

__all__ = [
    "hod_dummies",
    "how_dummies",
    "holiday_dummies",
    "interaction_block",
    "lag_block",
    "build_matrix",
    "design_rows",
    "deterministic_rows",
    "stochastic_rows",
    "FeatureBlock",
    "FeatureMatrix",
    "FeatureSpec",
    "LagSets",
    "SplineBasisConfig",
    "mean_spec",
    "variance_spec",
    "bspline_basis",
    "periodic_basis",
]
