# ensemble/rearrange.py
import numpy as np

from ensemble.simulate import REARRANGE_STREAM, path_generator
from errors import UnknownMode
from models import DEPENDENCE_MODES, EnsembleForecast


def comonotone(paths: np.ndarray) -> np.ndarray:
    """Rank r at every hour goes to path r: non-crossing paths."""
    return np.sort(paths, axis=0)


def countermonotone(paths: np.ndarray) -> np.ndarray:
    """Ascending at hour 1, then the rank order flips from each hour to the next."""
    out = np.sort(paths, axis=0)
    out[:, 1::2] = out[::-1, 1::2]
    return out


def independent(paths: np.ndarray, seed: int, origin: int) -> np.ndarray:
    """Each hour's values shuffled by its own seeded permutation."""
    out = np.empty_like(paths)
    M = paths.shape[0]
    for h in range(paths.shape[1]):
        perm = path_generator(seed, origin, REARRANGE_STREAM, h).permutation(M)
        out[:, h] = paths[perm, h]
    return out


def rearrange(ens: EnsembleForecast, mode: str) -> EnsembleForecast:
    """Re-link the per-hour marginals of `ens`; the marginals stay bit-exact."""
    if mode not in DEPENDENCE_MODES:
        raise UnknownMode(f"unknown dependence mode {mode!r}", mode=mode)
    if mode == "standard":
        return ens
    paths = np.array(ens.paths)
    if mode == "comonotone":
        out = comonotone(paths)
    elif mode == "countermonotone":
        out = countermonotone(paths)
    else:
        out = independent(paths, ens.seed, ens.origin)
    return ens.replace(out, mode)
