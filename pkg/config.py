# config.py
import logging
import os
from dataclasses import dataclass, field, fields
from pathlib import Path

from dotenv import load_dotenv, dotenv_values

from errors import ConfigurationError

BASE_DIR = os.path.dirname(os.path.abspath(__file__))
ENV_PATH = os.path.join(BASE_DIR, ".env")

logger = logging.getLogger(__name__)

# 1) Load .env explicitly
if os.path.exists(ENV_PATH):
    load_dotenv(dotenv_path=ENV_PATH, override=False)


def _env_int(key: str, default: int) -> int:
    return int(os.getenv(key, str(default)))


class Config:
    # ----- logging / output -----
    LOG_LEVEL = os.getenv("HYDROCAST_LOG_LEVEL", "INFO").upper()
    OUTPUT_DIR = os.getenv("HYDROCAST_OUTPUT_DIR", "output")

    # ----- study defaults -----
    HORIZON = _env_int("HYDROCAST_HORIZON", 24)
    ENSEMBLE_SIZE = _env_int("HYDROCAST_ENSEMBLE_SIZE", 1000)
    N_ORIGINS = _env_int("HYDROCAST_N_ORIGINS", 1000)
    QUANTILE_LEVELS = _env_int("HYDROCAST_QUANTILE_LEVELS", 99)
    BASE_YEAR = _env_int("HYDROCAST_BASE_YEAR", 2015)
    WORKERS = _env_int("HYDROCAST_WORKERS", 1)

    # ----- storage analysis -----
    STORAGE_CAPACITY = float(os.getenv("HYDROCAST_STORAGE_CAPACITY", "290000"))
    STORAGE_WINDOW = _env_int("HYDROCAST_STORAGE_WINDOW", 24)


# ---------- study configuration ----------
@dataclass(frozen=True)
class StudyConfig:
    data_path: str
    seed: int
    calib_length: int
    holidays_path: str | None = None
    n_origins: int = Config.N_ORIGINS
    horizon: int = Config.HORIZON
    ensemble_size: int = Config.ENSEMBLE_SIZE
    models: tuple[str, ...] = ("arx_arch_lasso", "ar_w", "naive_mrw")
    reference_model: str = "ar_w"
    output_dir: str = Config.OUTPUT_DIR
    window_length: int | None = None
    dependence_modes: tuple[str, ...] = ("standard",)
    study_mode: str = "validation"
    workers: int = Config.WORKERS
    base_year: int = Config.BASE_YEAR
    quantile_levels: int = Config.QUANTILE_LEVELS
    model_settings: dict = field(default_factory=dict)

    @property
    def effective_horizon(self) -> int:
        return 1 if self.study_mode == "calibration" else self.horizon


# file key -> (field name, parser)
def _csv_list(raw: str) -> tuple[str, ...]:
    return tuple(x.strip() for x in raw.split(",") if x.strip())


def _optional_int(raw: str) -> int | None:
    return int(raw) if raw.strip() else None


_KEYS = {
    "DATA_PATH": ("data_path", str),
    "HOLIDAYS_PATH": ("holidays_path", lambda s: s or None),
    "CALIB_LENGTH": ("calib_length", int),
    "N_ORIGINS": ("n_origins", int),
    "HORIZON": ("horizon", int),
    "ENSEMBLE_SIZE": ("ensemble_size", int),
    "SEED": ("seed", int),
    "MODELS": ("models", _csv_list),
    "REFERENCE_MODEL": ("reference_model", str),
    "OUTPUT_DIR": ("output_dir", str),
    "WINDOW_LENGTH": ("window_length", _optional_int),
    "DEPENDENCE_MODES": ("dependence_modes", _csv_list),
    "STUDY_MODE": ("study_mode", str),
    "WORKERS": ("workers", int),
    "BASE_YEAR": ("base_year", int),
    "QUANTILE_LEVELS": ("quantile_levels", int),
}

# per-model settings, kept as raw strings and parsed by the forecasters
MODEL_KEYS = (
    "LASSO_N_LAMBDAS",
    "LASSO_LAMBDA_MIN_RATIO",
    "LASSO_TOLERANCE",
    "LASSO_MAX_SWEEPS",
    "LASSO_PATH_TOLERANCE",
    "LASSO_LAGS_I",
    "LASSO_LAGS_K",
    "LASSO_LAGS_S",
    "VARIANCE_TARGET",
    "AR_P_MAX",
    "FLOOR_AT_ZERO",
)


def load_study_config(path: str | None = None, **overrides) -> StudyConfig:
    """Read a KEY=VALUE study file and apply CLI overrides (None = unset)."""
    raw: dict[str, str] = {}
    if path is not None:
        if not os.path.exists(path):
            raise ConfigurationError(f"config file not found: {path}", path=path)
        raw = {k.upper(): (v or "") for k, v in dotenv_values(path).items()}

    unknown = set(raw) - set(_KEYS) - set(MODEL_KEYS)
    if unknown:
        raise ConfigurationError(
            f"unknown config keys: {', '.join(sorted(unknown))}", path=path
        )

    values: dict = {}
    for key, (name, parse) in _KEYS.items():
        if key in raw:
            try:
                values[name] = parse(raw[key])
            except ValueError as e:
                raise ConfigurationError(f"bad value for {key}: {raw[key]!r}",
                                         key=key) from e
    values["model_settings"] = {k: raw[k] for k in MODEL_KEYS if k in raw}

    known = {f.name for f in fields(StudyConfig)}
    for name, value in overrides.items():
        if value is None:
            continue
        if name not in known:
            raise ConfigurationError(f"unknown override {name!r}")
        values[name] = value

    for required in ("data_path", "seed", "calib_length"):
        if values.get(required) is None:
            raise ConfigurationError(f"missing required setting {required!r}")

    cfg = StudyConfig(**values)
    validate_study_config(cfg)
    return cfg


def validate_study_config(cfg: StudyConfig) -> None:
    # local import: registry pulls in the model packages
    from benchmarks.registry import registered_models
    from models import DEPENDENCE_MODES

    if not cfg.models:
        raise ConfigurationError("MODELS is empty")
    names = registered_models()
    for m in cfg.models:
        if m not in names:
            raise ConfigurationError(
                f"model {m!r} is not registered (known: {', '.join(names)})",
                model=m,
            )
    if len(set(cfg.models)) != len(cfg.models):
        raise ConfigurationError("MODELS lists a model twice")
    variants = study_model_names(cfg)
    if cfg.reference_model not in variants:
        raise ConfigurationError(
            f"reference model {cfg.reference_model!r} is not in the model list",
            reference_model=cfg.reference_model,
        )
    for mode in cfg.dependence_modes:
        if mode not in DEPENDENCE_MODES:
            raise ConfigurationError(f"unknown dependence mode {mode!r}")
    if cfg.study_mode not in ("validation", "calibration"):
        raise ConfigurationError(f"unknown STUDY_MODE {cfg.study_mode!r}")
    for name in ("n_origins", "horizon", "ensemble_size", "calib_length",
                 "workers", "quantile_levels"):
        if getattr(cfg, name) < 1:
            raise ConfigurationError(f"{name} must be >= 1")
    if cfg.window_length is not None and cfg.window_length < 1:
        raise ConfigurationError("WINDOW_LENGTH must be >= 1")
    if not Path(cfg.data_path).suffix:
        logger.warning("data path %s has no file extension", cfg.data_path)


def study_model_names(cfg: StudyConfig) -> list[str]:
    """Model names as they appear in reports, dependence variants included."""
    out = []
    for i, m in enumerate(cfg.models):
        if i == 0:
            for mode in cfg.dependence_modes:
                out.append(m if mode == "standard" else f"{m}[{mode}]")
        else:
            out.append(m)
    return out
