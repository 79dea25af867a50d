# series/synthetic.py
"""Synthetic hourly demand with seasonal mean, AR and ARCH recursions."""
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
from dotenv import dotenv_values

from errors import ConfigurationError, NegativeVarianceParams, UnstableProcess
from models import TimeSeries


@dataclass(frozen=True)
class SyntheticProcess:
    """Process definition.

    mean(t) = level + daily_amplitude * sin(2*pi*hour/24) + hour_profile[hour]
              + step * 1{hour >= step_hour}
    ar_form "deviation": Y_t = mean(t) + sum_k phi_k (Y_{t-k} - mean(t-k)) + eps_t
    ar_form "raw":       Y_t = mean(t) + sum_k phi_k Y_{t-k} + eps_t
    eps_t = noise_scale * u_t,  u_t = sigma_t Z_t,
    sigma_t^2 = arch_omega + sum_k arch_k u_{t-k}^2
    """

    length: int
    start: str = "2015-01-05 00:00"
    level: float = 0.0
    daily_amplitude: float = 0.0
    hour_profile: tuple[float, ...] = ()
    step: float = 0.0
    step_hour: int = 12
    ar: dict = field(default_factory=dict)
    ar_form: str = "deviation"
    arch_omega: float = 1.0
    arch: dict = field(default_factory=dict)
    noise_scale: float = 1.0
    innovation: str = "normal"
    student_df: float = 5.0
    burn_in: int = 500


def check_process(proc: SyntheticProcess) -> None:
    if proc.length < 1:
        raise ConfigurationError("length must be >= 1")
    if proc.ar_form not in ("deviation", "raw"):
        raise ConfigurationError(f"unknown ar_form {proc.ar_form!r}")
    if proc.innovation not in ("normal", "student_t"):
        raise ConfigurationError(f"unknown innovation law {proc.innovation!r}")
    if proc.innovation == "student_t" and proc.student_df <= 2:
        raise ConfigurationError("student_t innovations need df > 2")
    if proc.hour_profile and len(proc.hour_profile) != 24:
        raise ConfigurationError("hour_profile needs 24 values")
    if proc.arch_omega < 0 or any(a < 0 for a in proc.arch.values()) \
            or proc.noise_scale < 0:
        raise NegativeVarianceParams("ARCH parameters and noise scale must be >= 0")
    if proc.arch and sum(proc.arch.values()) >= 1:
        raise UnstableProcess("ARCH coefficients must sum to less than 1")
    if proc.ar:
        p = max(proc.ar)
        poly = np.zeros(p + 1)
        poly[0] = 1.0
        for k, phi in proc.ar.items():
            poly[k] -= phi
        # roots of 1 - sum phi_k z^k must lie outside the unit circle
        roots = np.roots(poly[::-1])
        if roots.size and np.min(np.abs(roots)) <= 1.0 + 1e-9:
            raise UnstableProcess("AR polynomial has a root inside the unit circle",
                                  ar=proc.ar)


def seasonal_mean(proc: SyntheticProcess, hours: np.ndarray) -> np.ndarray:
    mean = np.full(hours.shape, proc.level, dtype=float)
    mean += proc.daily_amplitude * np.sin(2 * np.pi * hours / 24)
    if proc.hour_profile:
        mean += np.asarray(proc.hour_profile, dtype=float)[hours]
    mean += proc.step * (hours >= proc.step_hour)
    return mean


def simulate_synthetic(proc: SyntheticProcess, seed: int) -> TimeSeries:
    check_process(proc)
    rng = np.random.default_rng(seed)

    start = pd.Timestamp(proc.start) - pd.Timedelta(hours=proc.burn_in)
    n = proc.length + proc.burn_in
    hours = pd.date_range(start, periods=n, freq="h").hour.to_numpy()
    mean = seasonal_mean(proc, hours)

    if proc.innovation == "normal":
        z = rng.standard_normal(n)
    else:
        df = proc.student_df
        z = rng.standard_t(df, n) * np.sqrt((df - 2) / df)

    ar = sorted(proc.ar.items())
    arch = sorted(proc.arch.items())
    y = mean.copy()
    u = np.zeros(n)
    for t in range(n):
        sigma2 = proc.arch_omega
        for k, a in arch:
            if t >= k:
                sigma2 += a * u[t - k] ** 2
        u[t] = np.sqrt(sigma2) * z[t]
        value = mean[t] + proc.noise_scale * u[t]
        for k, phi in ar:
            if t >= k:
                lagged = y[t - k] - mean[t - k] if proc.ar_form == "deviation" else y[t - k]
                value += phi * lagged
        y[t] = value

    return TimeSeries(y[proc.burn_in:], pd.Timestamp(proc.start))


def _parse_lag_map(raw: str) -> dict:
    out = {}
    for part in filter(None, (p.strip() for p in raw.split(","))):
        lag, coef = part.split(":")
        out[int(lag)] = float(coef)
    return out


def load_process(path) -> SyntheticProcess:
    """Process file in KEY=VALUE form; AR and ARCH as `lag:coef` lists."""
    raw = {k.lower(): v for k, v in dotenv_values(path).items() if v is not None}
    kwargs: dict = {}
    try:
        for key, value in raw.items():
            if key in ("ar", "arch"):
                kwargs[key] = _parse_lag_map(value)
            elif key == "hour_profile":
                kwargs[key] = tuple(float(x) for x in value.split(","))
            elif key in ("length", "step_hour", "burn_in"):
                kwargs[key] = int(value)
            elif key in ("start", "ar_form", "innovation"):
                kwargs[key] = value
            elif key in ("level", "daily_amplitude", "step", "arch_omega",
                         "noise_scale", "student_df"):
                kwargs[key] = float(value)
            else:
                raise ConfigurationError(f"unknown process key {key!r}")
        return SyntheticProcess(**kwargs)
    except (ValueError, TypeError) as e:
        raise ConfigurationError(f"bad process file {path}: {e}") from e
