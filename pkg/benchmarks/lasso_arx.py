# benchmarks/lasso_arx.py
from benchmarks.base import Forecaster, parse_bool
from demand.model import VARIANCE_TARGETS, fit_demand_model
from ensemble.simulate import simulate
from errors import ConfigurationError
from features.spec import LagSets, parse_lags
from lasso.solver import LassoConfig
from models import CalendarContext, EnsembleForecast, TimeSeries


class LassoARXForecaster(Forecaster):
    """ARX mean with ARCH variance, both lasso/BIC, simulated recursively."""

    name = "arx_arch_lasso"

    def __init__(self, settings: dict | None = None):
        super().__init__(settings)
        defaults = LassoConfig()
        self.lasso_cfg = LassoConfig(
            n_lambdas=self.setting("LASSO_N_LAMBDAS", int, defaults.n_lambdas),
            lambda_min_ratio=self.setting("LASSO_LAMBDA_MIN_RATIO", float,
                                          defaults.lambda_min_ratio),
            tolerance=self.setting("LASSO_TOLERANCE", float, defaults.tolerance),
            max_sweeps=self.setting("LASSO_MAX_SWEEPS", int, defaults.max_sweeps),
            path_tolerance=self.setting("LASSO_PATH_TOLERANCE", float,
                                        defaults.path_tolerance),
        )
        base = LagSets()
        self.lag_sets = LagSets(
            I=self.setting("LASSO_LAGS_I", parse_lags, base.I),
            K=self.setting("LASSO_LAGS_K", parse_lags, base.K),
            S=self.setting("LASSO_LAGS_S", parse_lags, base.S),
        )
        self.variance_target = self.setting("VARIANCE_TARGET", str, "squared")
        if self.variance_target not in VARIANCE_TARGETS:
            raise ConfigurationError(f"unknown VARIANCE_TARGET {self.variance_target!r}")
        self.floor_at_zero = self.setting("FLOOR_AT_ZERO", parse_bool, False)

    def fit(self, history: TimeSeries, ctx: CalendarContext, start: int = 0) -> "LassoARXForecaster":
        self.model = fit_demand_model(history, ctx, self.lag_sets, self.lasso_cfg,
                                      self.variance_target, start=start)
        return self

    def _forecast(self, history, ctx, H, M, seed) -> EnsembleForecast:
        return simulate(self.model, history, ctx, H, M, seed, self.floor_at_zero)

    @property
    def parameter_count(self) -> int:
        return 0 if self.model is None else self.model.parameter_count
