# features/spec.py
"""Declarative feature specifications and their realized matrices."""
from dataclasses import dataclass, field

import numpy as np

from errors import ConfigurationError, InsufficientSpacing, InvalidDegree
from models import S_ANNUAL, HolidayCalendar


def _default_I() -> tuple[int, ...]:
    weekly = (504, 505, 672, 673, 840, 841, 1008, 1009, 1176, 1177, 1344, 1345)
    return tuple(range(1, 362)) + weekly


@dataclass(frozen=True)
class LagSets:
    I: tuple[int, ...] = field(default_factory=_default_I)
    K: tuple[int, ...] = tuple(range(1, 362))
    S: tuple[int, ...] = (1, 2, 24, 25, 168, 169)

    def __post_init__(self):
        for name in ("I", "K", "S"):
            lags = getattr(self, name)
            if any(k < 1 for k in lags):
                raise ConfigurationError(f"lag set {name} contains a lag < 1")
            if list(lags) != sorted(set(lags)):
                raise ConfigurationError(f"lag set {name} must be strictly increasing")
        if not set(self.S) <= set(self.I):
            raise ConfigurationError("interaction lags S must be a subset of I")
        if not set(self.K) <= set(self.I):
            raise ConfigurationError("variance lags K must be a subset of I")


@dataclass(frozen=True)
class SplineBasisConfig:
    degree: int = 3
    seasonality: float = S_ANNUAL
    n_basis: int = 4
    cumulative: bool = True

    @property
    def knot_spacing(self) -> float:
        return self.seasonality / self.n_basis

    def validate(self) -> None:
        if self.degree < 1 or self.degree % 2 == 0:
            raise InvalidDegree(f"spline degree must be odd, got {self.degree}")
        if self.n_basis < self.degree + 1:
            # a basis function spans degree+1 knot intervals and must not
            # overlap itself after wrapping
            raise InsufficientSpacing(
                f"{self.n_basis} basis functions cannot carry degree {self.degree}"
            )
        ratio = self.seasonality / self.knot_spacing
        if abs(ratio - round(ratio)) > 1e-9:
            raise InsufficientSpacing("seasonality is not a multiple of the knot spacing")


DETERMINISTIC_BLOCKS = (
    "const", "hod", "hod_cum", "how", "spline_cum", "spline",
    "hd", "fwh_cum", "fdh_cum", "fwh", "fdh",
)
LAG_BLOCKS = ("lags", "lag_hod", "lag_hd")

MEAN_BLOCKS = ("const", "hod", "hod_cum", "how", "spline_cum", "hd",
               "fwh_cum", "fdh_cum", "lags", "lag_hod", "lag_hd")
VARIANCE_BLOCKS = ("const", "hod", "how", "spline", "hd", "fwh", "fdh", "lags")


@dataclass(frozen=True)
class FeatureSpec:
    target: str
    blocks: tuple[str, ...]
    lags: tuple[int, ...]
    interaction_lags: tuple[int, ...] = ()
    spline: SplineBasisConfig = field(default_factory=SplineBasisConfig)

    def __post_init__(self):
        if self.target not in ("mean", "variance"):
            raise ConfigurationError(f"unknown feature target {self.target!r}")
        for b in self.blocks:
            if b not in DETERMINISTIC_BLOCKS + LAG_BLOCKS:
                raise ConfigurationError(f"unknown feature block {b!r}")
        det = [b for b in self.blocks if b in DETERMINISTIC_BLOCKS]
        if list(self.blocks[:len(det)]) != det:
            raise ConfigurationError("deterministic blocks must precede lag blocks")
        if "spline" in self.blocks or "spline_cum" in self.blocks:
            self.spline.validate()

    @property
    def lag_prefix(self) -> str:
        return "Y" if self.target == "mean" else "eps2"

    @property
    def deterministic_blocks(self) -> tuple[str, ...]:
        return tuple(b for b in self.blocks if b in DETERMINISTIC_BLOCKS)

    @property
    def max_lag(self) -> int:
        lags = (self.lags if "lags" in self.blocks else ()) + (
            self.interaction_lags if {"lag_hod", "lag_hd"} & set(self.blocks) else ())
        return max(lags, default=0)

    def column_names(self, calendar: HolidayCalendar) -> tuple[str, ...]:
        names: list[str] = []
        K = self.spline.n_basis
        pre = self.lag_prefix
        for b in self.blocks:
            if b == "const":
                names.append("const")
            elif b == "hod":
                names += [f"HoD_{i}" for i in range(2, 25)]
            elif b == "hod_cum":
                names += [f"HoDcum_{i}" for i in range(2, 24)]
            elif b == "how":
                names += [f"HoW_{i}" for i in range(2, 169)]
            elif b == "spline_cum":
                names += [f"Bcum_{i}" for i in range(1, K)]
            elif b == "spline":
                names += [f"B_{i}" for i in range(1, K)]
            elif b == "hd":
                names += [f"HD_{i}" for i in range(1, calendar.P + 1)]
            elif b in ("fwh_cum", "fwh") and calendar.W:
                stem = "FWHcum" if b == "fwh_cum" else "FWH"
                names += [f"{stem}_{i}" for i in range(2, 25)]
            elif b in ("fdh_cum", "fdh") and calendar.V:
                stem = "FDHcum" if b == "fdh_cum" else "FDH"
                names += [f"{stem}_{i}" for i in range(2, 25)]
            elif b == "lags":
                names += [f"{pre}_lag{k}" for k in self.lags]
            elif b == "lag_hod":
                names += [f"{pre}_lag{s}:HoD_{k}"
                          for s in self.interaction_lags for k in range(1, 25)]
            elif b == "lag_hd":
                names += [f"{pre}_lag{s}:HD_{k}"
                          for s in self.interaction_lags
                          for k in range(1, calendar.P + 1)]
        return tuple(names)

    # ---------- text form ----------
    def to_text(self) -> str:
        lines = [
            f"target={self.target}",
            f"blocks={','.join(self.blocks)}",
            f"lags={format_lags(self.lags)}",
            f"interaction_lags={format_lags(self.interaction_lags)}",
            f"spline_degree={self.spline.degree}",
            f"spline_seasonality={self.spline.seasonality!r}",
            f"spline_n_basis={self.spline.n_basis}",
            f"spline_cumulative={str(self.spline.cumulative).lower()}",
        ]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "FeatureSpec":
        raw = {}
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, _, value = line.partition("=")
            raw[key.strip()] = value.strip()
        try:
            spline = SplineBasisConfig(
                degree=int(raw["spline_degree"]),
                seasonality=float(raw["spline_seasonality"]),
                n_basis=int(raw["spline_n_basis"]),
                cumulative=raw["spline_cumulative"] == "true",
            )
            return cls(
                target=raw["target"],
                blocks=tuple(b for b in raw["blocks"].split(",") if b),
                lags=parse_lags(raw["lags"]),
                interaction_lags=parse_lags(raw["interaction_lags"]),
                spline=spline,
            )
        except KeyError as e:
            raise ConfigurationError(f"feature spec misses key {e.args[0]!r}") from e


def mean_spec(lag_sets: LagSets | None = None,
              spline: SplineBasisConfig | None = None) -> FeatureSpec:
    lag_sets = lag_sets or LagSets()
    spline = spline or SplineBasisConfig(cumulative=True)
    return FeatureSpec("mean", MEAN_BLOCKS, lag_sets.I, lag_sets.S, spline)


def variance_spec(lag_sets: LagSets | None = None,
                  spline: SplineBasisConfig | None = None) -> FeatureSpec:
    lag_sets = lag_sets or LagSets()
    spline = spline or SplineBasisConfig(cumulative=False)
    return FeatureSpec("variance", VARIANCE_BLOCKS, lag_sets.K, (), spline)


def parse_lags(text: str) -> tuple[int, ...]:
    """'1-3,24' -> (1, 2, 3, 24)."""
    out: list[int] = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "-" in part:
            lo, hi = part.split("-")
            out += range(int(lo), int(hi) + 1)
        else:
            out.append(int(part))
    return tuple(sorted(set(out)))


def format_lags(lags) -> str:
    lags = sorted(lags)
    parts, i = [], 0
    while i < len(lags):
        j = i
        while j + 1 < len(lags) and lags[j + 1] == lags[j] + 1:
            j += 1
        parts.append(str(lags[i]) if j - i < 2 else f"{lags[i]}-{lags[j]}")
        if 0 < j - i < 2:
            parts += [str(x) for x in lags[i + 1:j + 1]]
        i = j + 1
    return ",".join(parts)


# ---------- realized blocks and matrices ----------
@dataclass(frozen=True, eq=False)
class FeatureBlock:
    names: tuple[str, ...]
    values: np.ndarray

    @property
    def width(self) -> int:
        return len(self.names)


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """Design matrix with one row per target index in `rows`."""

    names: tuple[str, ...]
    X: np.ndarray
    y: np.ndarray
    rows: np.ndarray

    @property
    def shape(self) -> tuple[int, int]:
        return self.X.shape


# ---------- component families ----------
FAMILIES = ("intercept", "daily_weekly", "holiday", "annual",
            "autoregressive", "interaction")


def feature_family(name: str) -> str:
    """Model component a column belongs to."""
    if name == "const":
        return "intercept"
    if ":" in name:
        return "interaction"
    stem = name.split("_", 1)[0]
    if stem in ("HoD", "HoDcum", "HoW"):
        return "daily_weekly"
    if stem in ("HD", "FWH", "FWHcum", "FDH", "FDHcum"):
        return "holiday"
    if stem in ("B", "Bcum"):
        return "annual"
    if name.startswith(("Y_lag", "eps2_lag")):
        return "autoregressive"
    raise ConfigurationError(f"column {name!r} belongs to no component family")
