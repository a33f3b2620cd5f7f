"""CSV schemas of the workbench outputs, with strict validation.

These column lists are the interface contract; a file whose header does
not match exactly is rejected before any figure is produced.
"""

from __future__ import annotations

import csv
from pathlib import Path

PMF_COLUMNS = ["dist", "n", "value", "probability"]
DIFFICULTY_COLUMNS = ["dist", "n", "b", "r", "log_b_r", "difficulty"]
RATIO_COLUMNS = ["alg", "dist", "b", "n", "h", "log10_complexity",
                 "ratio_to_test_avg"]
MC_COLUMNS = ["algorithm", "dist", "b", "n", "h", "trials", "seed", "mean",
              "ci_low", "ci_high", "oracle", "pass"]


class SchemaError(Exception):
    """Input CSV missing, empty, or with an unexpected header."""


def load_csv(path: Path, columns: list[str]) -> list[dict]:
    if not path.is_file():
        raise SchemaError(f"missing input file: {path}")
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise SchemaError(f"{path}: empty file")
        if list(reader.fieldnames) != columns:
            raise SchemaError(
                f"{path}: expected columns {columns}, got {list(reader.fieldnames)}")
        rows = list(reader)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return rows


def fig2_columns(in_dir: Path) -> list[str]:
    """Distribution names present as complete pmf/difficulty/ratio triplets.

    Raises if any distribution is missing one of its three files, so a
    partial bundle never renders a partial figure.
    """
    in_dir = Path(in_dir)
    names = sorted({p.name[len("fig2_"):-len("_pmf.csv")]
                    for p in in_dir.glob("fig2_*_pmf.csv")})
    if not names:
        raise SchemaError(f"no fig2_<dist>_pmf.csv files under {in_dir}")
    for name in names:
        for kind in ("pmf", "difficulty", "ratio"):
            path = in_dir / f"fig2_{name}_{kind}.csv"
            if not path.is_file():
                raise SchemaError(f"distribution {name!r} is missing {path.name}")
    # keep the canonical column order of the workbench when it applies
    canonical = ["uniform", "triangular", "cubic", "bimodal"]
    if set(names) <= set(canonical):
        names.sort(key=canonical.index)
    return names
