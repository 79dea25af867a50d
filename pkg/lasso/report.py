# lasso/report.py
import pandas as pd

from features.spec import FAMILIES, feature_family
from lasso.path import LassoFit


def coefficient_table(fit: LassoFit) -> pd.DataFrame:
    """feature, beta_standardized, beta_original; an intercept row is added
    only when the design has no `const` column."""
    coef, intercept = fit.beta_orig
    std = dict(zip(fit.record.kept_names, fit.coef_std.tolist()))
    rows = [
        {"feature": name, "beta_standardized": std.get(name, 0.0),
         "beta_original": float(c)}
        for name, c in zip(fit.names, coef)
    ]
    if "const" not in fit.names:
        rows.insert(0, {"feature": "(intercept)", "beta_standardized": 0.0,
                        "beta_original": intercept})
    return pd.DataFrame(rows, columns=["feature", "beta_standardized", "beta_original"])


def write_coefficient_report(fit: LassoFit, path) -> None:
    """CSV with `#` metadata lines; read back with pandas.read_csv(comment="#")."""
    with open(path, "w", newline="") as f:
        f.write(f"# selected_lambda={fit.selected_lambda!r}\n")
        f.write(f"# selected_index={fit.selected}\n")
        f.write(f"# bic={float(fit.bic[fit.selected])!r}\n")
        f.write(f"# active={len(fit.active_set)}\n")
        coefficient_table(fit).to_csv(f, index=False, float_format="%.17g")


def family_summary(fit: LassoFit) -> pd.DataFrame:
    """Selected versus available columns per model component."""
    active = set(fit.active_set)
    counts = {fam: [0, 0] for fam in FAMILIES}
    for name in fit.names:
        fam = feature_family(name)
        counts[fam][1] += 1
        if name in active:
            counts[fam][0] += 1
    return pd.DataFrame(
        [{"family": fam, "selected": s, "total": t}
         for fam, (s, t) in counts.items() if t],
        columns=["family", "selected", "total"],
    )
