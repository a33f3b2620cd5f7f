"""Figure builders: the three-row comparison grid and the Monte-Carlo
convergence panels.

Rendering is a pure function of the CSV contents plus the spec options;
default styling (matplotlib tab colors, no randomness) keeps re-runs
byte-identical under a fixed library version.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .schemas import (DIFFICULTY_COLUMNS, MC_COLUMNS, PMF_COLUMNS,
                      RATIO_COLUMNS, fig2_columns, load_csv)

ALG_ORDER = ["alphabeta", "scout", "test_bruteforce", "test_bisection",
             "test_hardest"]
ALG_LABELS = {
    "alphabeta": "alpha-beta",
    "scout": "scout",
    "test_bruteforce": "test-bruteforce",
    "test_bisection": "test-bisection",
    "test_hardest": "test-hardest",
}


@dataclass(frozen=True)
class FigureSpec:
    kind: str               # "fig2" or "mc"
    inputs: Path
    output: Path
    log_h: bool = True
    log_ratio: bool = False
    dpi: int = 150
    extra: dict = field(default_factory=dict)


def render_fig2(spec: FigureSpec):
    """Three rows by one column per distribution: pmf bars, branching
    factor vs b with sqrt(b) and b reference lines, and the per-algorithm
    ratio-to-average-TEST curves."""
    in_dir = Path(spec.inputs)
    columns = fig2_columns(in_dir)
    bundles = []
    for name in columns:
        bundles.append((
            name,
            load_csv(in_dir / f"fig2_{name}_pmf.csv", PMF_COLUMNS),
            load_csv(in_dir / f"fig2_{name}_difficulty.csv", DIFFICULTY_COLUMNS),
            load_csv(in_dir / f"fig2_{name}_ratio.csv", RATIO_COLUMNS),
        ))
    ncols = len(bundles)
    fig, axes = plt.subplots(3, ncols, figsize=(3.2 * ncols, 7.6), squeeze=False)
    for col, (name, pmf_rows, diff_rows, ratio_rows) in enumerate(bundles):
        ax = axes[0][col]
        values = [int(r["value"]) for r in pmf_rows]
        probs = [float(r["probability"]) for r in pmf_rows]
        ax.bar(values, probs, color="tab:blue")
        ax.set_title(name)
        ax.set_xlabel("value")
        if col == 0:
            ax.set_ylabel("pmf")

        ax = axes[1][col]
        bs = [int(r["b"]) for r in diff_rows]
        rs = [float(r["r"]) for r in diff_rows]
        ax.plot(bs, rs, "o-", color="tab:red", label="r")
        ax.plot(bs, [math.sqrt(b) for b in bs], "--", color="gray",
                label=r"$\sqrt{b}$")
        ax.plot(bs, bs, ":", color="black", label="b")
        ax.set_xlabel("b")
        if col == 0:
            ax.set_ylabel("branching factor")
            ax.legend(fontsize=7)

        ax = axes[2][col]
        series: dict[str, list[tuple[int, float]]] = {}
        for row in ratio_rows:
            series.setdefault(row["alg"], []).append(
                (int(row["h"]), float(row["ratio_to_test_avg"])))
        algs = sorted(series, key=lambda a: (ALG_ORDER.index(a)
                                             if a in ALG_ORDER else 99, a))
        for alg in algs:
            pts = sorted(series[alg])
            hs = [h for h, _ in pts if h >= 1]
            ratios = [v for h, v in pts if h >= 1]
            ax.plot(hs, ratios, label=ALG_LABELS.get(alg, alg))
        if spec.log_h:
            ax.set_xscale("log")
        if spec.log_ratio:
            ax.set_yscale("log")
        ax.set_xlabel("height h")
        if col == 0:
            ax.set_ylabel("complexity / avg TEST")
            ax.legend(fontsize=7)
    fig.tight_layout()
    return fig


def render_mc(spec: FigureSpec):
    """One panel per Monte-Carlo setting: seed-averaged running mean vs
    number of trials, shaded CI band, horizontal oracle line."""
    rows = load_csv(Path(spec.inputs), MC_COLUMNS)
    panels: dict[tuple, dict] = {}
    for row in rows:
        key = (row["algorithm"], row["dist"], row["b"], row["n"], row["h"])
        panel = panels.setdefault(key, {"oracle": float(row["oracle"]),
                                        "by_trials": {}})
        entry = panel["by_trials"].setdefault(int(row["trials"]),
                                              dict(mean=[], lo=[], hi=[]))
        entry["mean"].append(float(row["mean"]))
        entry["lo"].append(float(row["ci_low"]))
        entry["hi"].append(float(row["ci_high"]))
    n_panels = len(panels)
    ncols = min(3, n_panels)
    nrows = (n_panels + ncols - 1) // ncols
    fig, axes = plt.subplots(nrows, ncols, figsize=(4.0 * ncols, 2.8 * nrows),
                             squeeze=False)
    flat = [ax for row in axes for ax in row]
    for ax in flat[n_panels:]:
        ax.set_visible(False)
    for ax, (key, panel) in zip(flat, sorted(panels.items())):
        trials = sorted(panel["by_trials"])
        mean = [sum(panel["by_trials"][t]["mean"]) / len(panel["by_trials"][t]["mean"])
                for t in trials]
        lo = [sum(panel["by_trials"][t]["lo"]) / len(panel["by_trials"][t]["lo"])
              for t in trials]
        hi = [sum(panel["by_trials"][t]["hi"]) / len(panel["by_trials"][t]["hi"])
              for t in trials]
        ax.plot(trials, mean, color="tab:blue", label="MC mean")
        ax.fill_between(trials, lo, hi, color="tab:blue", alpha=0.25,
                        label="95% CI")
        ax.axhline(panel["oracle"], color="tab:red", linestyle="--",
                   label="oracle")
        ax.set_xscale("log")
        alg, dist, b, n, h = key
        ax.set_title(f"{alg}  {dist}  b={b} n={n} h={h}", fontsize=8)
        ax.set_xlabel("trials")
        ax.legend(fontsize=6)
    fig.tight_layout()
    return fig


def render(spec: FigureSpec) -> Path:
    """Build and save the requested figure; no file is written on error."""
    if spec.kind == "fig2":
        fig = render_fig2(spec)
    elif spec.kind == "mc":
        fig = render_mc(spec)
    else:
        raise ValueError(f"unknown figure kind {spec.kind!r}")
    out = Path(spec.output)
    fig.savefig(out, dpi=spec.dpi)
    plt.close(fig)
    return out
