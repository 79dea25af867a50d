from ensemble.analysis import (
    cumulative_demand,
    empirical_quantiles,
    exceedance_probability,
    quantile_grid,
    rank_correlation,
)
from ensemble.rearrange import rearrange
from ensemble.simulate import draw_indices, path_generator, simulate

__all__ = [
    "cumulative_demand",
    "empirical_quantiles",
    "exceedance_probability",
    "quantile_grid",
    "rank_correlation",
    "rearrange",
    "draw_indices",
    "path_generator",
    "simulate",
]
