# study/outputs.py
"""Report files and the manifest that hashes them."""
import hashlib
import json
import math
import os
from dataclasses import asdict

import numpy as np
import pandas as pd

from config import StudyConfig

FLOAT_FORMAT = "%.10g"


def ensure_dir(path: str) -> None:
    os.makedirs(path, exist_ok=True)


def json_safe(obj):
    """JSON-safe copy: NaN/inf become null, numpy scalars plain Python."""
    if isinstance(obj, dict):
        return {str(k): json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_safe(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return json_safe(obj.tolist())
    if isinstance(obj, np.generic):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def write_csv(df: pd.DataFrame, path: str) -> str:
    df.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def write_json(obj, path: str) -> str:
    with open(path, "w") as f:
        json.dump(json_safe(obj), f, indent=2, sort_keys=True)
        f.write("\n")
    return path


def sha256_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def config_echo(cfg: StudyConfig) -> dict:
    return asdict(cfg)


def write_manifest(out_dir: str, files: list[str], complete: bool,
                   failures: list[dict] | None = None,
                   cfg: StudyConfig | None = None, name: str = "manifest.json") -> str:
    manifest = {
        "complete": complete,
        "files": {os.path.basename(p): sha256_file(p) for p in sorted(files)},
        "failures": failures or [],
    }
    if cfg is not None:
        manifest["config"] = config_echo(cfg)
    return write_json(manifest, os.path.join(out_dir, name))
