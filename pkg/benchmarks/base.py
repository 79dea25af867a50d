# benchmarks/base.py
from abc import ABC, abstractmethod

from errors import ConfigurationError, UnfittedModel
from models import CalendarContext, EnsembleForecast, TimeSeries


class Forecaster(ABC):
    """Uniform surface for the study runner: fit on a window, then forecast.

    `history` always ends right before the origin; `ctx` must reach H hours
    beyond it. A fresh instance is made per (origin, model) task.
    """

    name: str = ""

    def __init__(self, settings: dict | None = None):
        self.settings = dict(settings or {})
        self.model = None

    @abstractmethod
    def fit(self, history: TimeSeries, ctx: CalendarContext, start: int = 0) -> "Forecaster":
        ...

    @abstractmethod
    def _forecast(self, history: TimeSeries, ctx: CalendarContext,
                  H: int, M: int, seed: int) -> EnsembleForecast:
        ...

    @property
    @abstractmethod
    def parameter_count(self) -> int:
        ...

    def forecast(self, history: TimeSeries, ctx: CalendarContext,
                 H: int, M: int, seed: int) -> EnsembleForecast:
        if self.model is None:
            raise UnfittedModel(f"{self.name} has not been fitted", model=self.name)
        ens = self._forecast(history, ctx, H, M, seed)
        return EnsembleForecast(ens.paths, ens.origin, ens.seed, ens.dependence_mode, self.name)

    # ---------- settings ----------
    def setting(self, key: str, parse, default):
        raw = self.settings.get(key)
        if raw is None or raw == "":
            return default
        try:
            return parse(raw)
        except (TypeError, ValueError) as e:
            raise ConfigurationError(f"bad value for {key}: {raw!r}", key=key) from e


def parse_bool(raw) -> bool:
    if isinstance(raw, bool):
        return raw
    value = str(raw).strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ValueError(raw)
