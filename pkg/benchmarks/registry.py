# benchmarks/registry.py
from benchmarks.base import Forecaster
from benchmarks.lasso_arx import LassoARXForecaster
from benchmarks.naive import NaiveForecaster
from benchmarks.seasonal_ar import SeasonalARForecaster
from errors import UnknownModel

_FACTORIES = {
    "arx_arch_lasso": LassoARXForecaster,
    "naive_mean": lambda settings: NaiveForecaster("mean", settings),
    "naive_fm": lambda settings: NaiveForecaster("fm", settings),
    "naive_mrw": lambda settings: NaiveForecaster("mrw", settings),
    "ar_d": lambda settings: SeasonalARForecaster("D", settings),
    "ar_w": lambda settings: SeasonalARForecaster("W", settings),
}


def registered_models() -> tuple[str, ...]:
    return tuple(_FACTORIES)


def make_forecaster(name: str, settings: dict | None = None) -> Forecaster:
    try:
        factory = _FACTORIES[name]
    except KeyError:
        raise UnknownModel(f"model {name!r} is not registered", model=name) from None
    return factory(settings)
