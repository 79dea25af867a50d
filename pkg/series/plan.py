# series/plan.py
import numpy as np

from errors import InsufficientData
from models import RollingStudyPlan


def make_study_plan(series_length: int, calib_length: int, n_origins: int,
                    H: int, ensemble_size: int = 1000,
                    window_length: int | None = None) -> RollingStudyPlan:
    """Equally spaced forecast origins over [calib_length, series_length - H].

    An origin is the index of the first forecast hour. Rounded spacing keeps
    the gaps within one hour of each other, so origins drift over the day.
    """
    if n_origins < 1:
        raise InsufficientData("n_origins must be >= 1")
    last = series_length - H
    if last < calib_length:
        raise InsufficientData(
            f"series of {series_length} hours cannot hold {calib_length} "
            f"calibration hours plus a {H}-hour horizon",
            series_length=series_length, calib_length=calib_length, H=H,
        )
    if n_origins > last - calib_length + 1:
        raise InsufficientData(
            f"{n_origins} distinct origins do not fit into "
            f"[{calib_length}, {last}]"
        )
    if n_origins == 1:
        origins = (calib_length,)
    else:
        grid = np.linspace(calib_length, last, n_origins)
        origins = tuple(int(x) for x in np.floor(grid + 0.5))
    window = calib_length if window_length is None else window_length
    if window > calib_length:
        raise InsufficientData(
            f"window of {window} hours exceeds the {calib_length} hours before "
            "the first origin"
        )
    return RollingStudyPlan(origins, window, H, ensemble_size)
