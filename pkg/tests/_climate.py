"""Synthetic stand-in for the climate simulation crash ensemble.

540 latin-hypercube-style samples over the 18 ocean model parameters, with
46 failures concentrated where vconst_2 and vconst_3 are jointly high (one
outlier elsewhere). The two parameters are rank-coupled so the failure
structure spans a genuine 2D subspace, mirroring the published analysis of
the real ensemble. Used when the real CSV (scripts/fetch_climate.py) is
not available locally.
"""

import csv

import numpy as np

PARAM_NAMES = [
    "vconst_corr", "vconst_2", "vconst_3", "vconst_4", "vconst_5", "vconst_7",
    "ah_corr", "ah_bolus", "slm_corr", "efficiency_factor", "tidal_mix_max",
    "vertical_decay_scale", "convect_corr", "bckgrnd_vdc1", "bckgrnd_vdc_ban",
    "bckgrnd_vdc_eq", "bckgrnd_vdc_psim", "Prandtl",
]

N_SAMPLES = 540
N_FAILURES = 46


def generate(seed: int = 2026, rho: float = 0.75):
    rng = np.random.default_rng(seed)
    n = N_SAMPLES
    cols = []
    for _ in range(len(PARAM_NAMES)):
        strata = (np.arange(n) + rng.random(n)) / n
        cols.append(rng.permutation(strata))
    x = np.column_stack(cols)
    # rank-couple vconst_3 to vconst_2 so their joint structure is 2D
    target = rho * x[:, 1] + (1 - rho) * rng.random(n)
    ranks = np.argsort(np.argsort(target))
    x[:, 2] = np.sort(x[:, 2])[ranks]
    score = np.minimum(x[:, 1], x[:, 2])
    order = np.argsort(-score)
    fail = set(order[: N_FAILURES - 1].tolist())
    fail.add(int(order[-1]))  # one outlier away from the high-high corner
    labels = ["fail" if i in fail else "ok" for i in range(n)]
    return x, labels


def write_csv(path, seed: int = 2026, rho: float = 0.75):
    x, labels = generate(seed, rho)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(PARAM_NAMES + ["outcome"])
        for row, lab in zip(x, labels):
            writer.writerow(list(row) + [lab])
