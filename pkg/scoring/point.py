# scoring/point.py
import numpy as np

from errors import DimensionMismatch, ZeroVarianceActuals


def _pair(actuals, forecast) -> tuple[np.ndarray, np.ndarray]:
    y = np.atleast_1d(np.asarray(actuals, dtype=float))
    f = np.atleast_1d(np.asarray(forecast, dtype=float))
    if y.shape != f.shape or y.size < 1:
        raise DimensionMismatch("actuals and forecast must have the same non-zero length",
                                actuals=y.size, forecast=f.size)
    return y, f


def mae(actuals, forecast) -> float:
    y, f = _pair(actuals, forecast)
    return float(np.mean(np.abs(y - f)))


def rmse(actuals, forecast) -> float:
    y, f = _pair(actuals, forecast)
    return float(np.sqrt(np.mean((y - f) ** 2)))


def ns(actuals, forecast) -> float:
    """Nash-Sutcliffe efficiency."""
    y, f = _pair(actuals, forecast)
    denom = float(np.sum((y - y.mean()) ** 2))
    if denom == 0.0:
        raise ZeroVarianceActuals("NS is undefined for constant actuals")
    return 1.0 - float(np.sum((y - f) ** 2)) / denom


def point_forecasts(paths: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-hour (median, mean): the median feeds MAE, the mean RMSE and NS."""
    paths = np.asarray(paths, dtype=float)
    return np.median(paths, axis=0), paths.mean(axis=0)
