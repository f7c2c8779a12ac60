#!/usr/bin/env python3
"""Fetch the UCI climate model simulation crashes ensemble into data/climate.csv.

The raw file is whitespace-separated with Study/Run bookkeeping columns and
a binary outcome; this rewrites it as a plain CSV of the 18 ocean model
parameters plus an outcome label, which is what the analysis pipeline and
the test suite expect. Requires network access; without it the test suite
falls back to a synthetic stand-in with the same shape.
"""

import csv
import sys
import urllib.request
from pathlib import Path

URL = (
    "https://archive.ics.uci.edu/ml/machine-learning-databases/00252/"
    "pop_failures.dat"
)

PARAM_NAMES = [
    "vconst_corr", "vconst_2", "vconst_3", "vconst_4", "vconst_5", "vconst_7",
    "ah_corr", "ah_bolus", "slm_corr", "efficiency_factor", "tidal_mix_max",
    "vertical_decay_scale", "convect_corr", "bckgrnd_vdc1", "bckgrnd_vdc_ban",
    "bckgrnd_vdc_eq", "bckgrnd_vdc_psim", "Prandtl",
]


def main() -> int:
    out = Path(__file__).resolve().parent.parent / "data" / "climate.csv"
    out.parent.mkdir(exist_ok=True)
    try:
        with urllib.request.urlopen(URL, timeout=30) as resp:
            text = resp.read().decode("utf-8")
    except OSError as exc:
        print(f"download failed: {exc}", file=sys.stderr)
        return 1

    lines = [ln.split() for ln in text.strip().splitlines()]
    header, rows = lines[0], lines[1:]
    if len(header) != 21 or len(rows) != 540:
        print(f"unexpected layout: {len(header)} cols, {len(rows)} rows", file=sys.stderr)
        return 1

    with open(out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(PARAM_NAMES + ["outcome"])
        for row in rows:
            params = row[2:20]  # drop Study and Run bookkeeping columns
            label = "ok" if row[20] == "1" else "fail"
            writer.writerow(params + [label])
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
