"""Command-line surface: tree generation, instrumented runs, exact
complexity tables, branching-factor sweeps, difficulty classification,
Monte-Carlo validation, and the CSV bundles behind the figure grids.

CSV schemas (fixed):
  complexity / fig2 ratio: alg,dist,b,n,h,log10_complexity,ratio_to_test_avg
  branching:               alg,dist,b,n,r,iterations,residual,converged
  mc:                      algorithm,dist,b,n,h,trials,seed,mean,ci_low,ci_high,oracle,pass
  fig2 pmf:                dist,n,value,probability
  fig2 difficulty:         dist,n,b,r,log_b_r,difficulty

Exit codes: 0 success, 2 usage or input error, 3 numeric non-convergence
under --strict.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import montecarlo, recursion
from .core import BinaryParam, FgamesError, Pmf, SpecError
from .rng import mix64
from .solvers import (AlphaBeta, Scout, Solve, Test, TestBisection,
                      TestBruteforce, run_algorithm)
from .trees import generate_binary_tree, generate_tree, read_tree, write_tree

LOG10 = math.log(10)

FIG2_DISTRIBUTIONS = ("uniform", "triangular", "cubic", "bimodal")

# Default Monte-Carlo validation panels: small, diverse, cheap.
DEFAULT_MC_PANELS = (
    ("test", "uniform", 3, 2, 2, dict(s=1)),
    ("alphabeta", "uniform", 3, 2, 2, {}),
    ("scout", "uniform", 3, 2, 4, {}),
    ("test", "triangular", 3, 2, 4, dict(s=0)),
    ("solve", "bernoulli", 2, 1, 4, dict(q=0.3)),
    ("solve", "bernoulli", 2, 1, 6, dict(q=0.7)),
)


# ---------------------------------------------------------------------------
# Distributions and difficulty
# ---------------------------------------------------------------------------


def resolve_distribution(name: str, n: int, b: int, q: float | None = None,
                         positive_mass: float | None = None,
                         override_bimodal: bool = False):
    """Resolve a distribution spec to a Pmf (or BinaryParam for bernoulli).

    bimodal defaults its positive mass to min(2/b, 0.9); a mass <= 1/b is
    rejected unless explicitly overridden, since the hard-instance reading
    requires more than 1/b mass on positive atoms.
    """
    if name == "uniform":
        return Pmf.uniform(n)
    if name == "triangular":
        return Pmf.triangular(n)
    if name == "cubic":
        return Pmf.cubic(n)
    if name == "delta_n":
        return Pmf.delta_n(n)
    if name == "bimodal":
        m = min(2.0 / b, 0.9) if positive_mass is None else positive_mass
        if m <= 1.0 / b and not override_bimodal:
            raise SpecError(
                f"bimodal positive mass {m} <= 1/b = {1 / b:.4g}; pass "
                f"--override-bimodal-mass to accept it anyway")
        return Pmf.bimodal_uniform(n, m)
    if name == "bernoulli":
        if q is None:
            raise SpecError("bernoulli distribution needs --q")
        return BinaryParam(q)
    if name.startswith("file:"):
        path = Path(name[5:])
        try:
            pmf = Pmf.from_text(path.read_text(encoding="ascii"))
        except OSError as exc:
            raise SpecError(f"cannot read pmf file {path}: {exc}") from None
        if pmf.n != n:
            raise SpecError(f"pmf file has n={pmf.n}, expected n={n}")
        return pmf
    raise SpecError(f"unknown distribution {name!r}")


@dataclass(frozen=True)
class DifficultyClass:
    label: str
    r: float
    b: int

    @property
    def log_b_r(self) -> float:
        return math.log(self.r) / math.log(self.b)


def classify_difficulty(r: float, b: int) -> DifficultyClass:
    """Easy if log_b r <= 0.55 (near the sqrt(b) floor), Hard if >= 0.9
    (near the b ceiling), Medium otherwise.  Cutoffs are a deliberate
    quantification of an informal reading."""
    g = math.log(r) / math.log(b)
    label = "easy" if g <= 0.55 else ("hard" if g >= 0.9 else "medium")
    return DifficultyClass(label, r, b)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _write_csv(path: str | None, header: list[str], rows) -> None:
    rows = list(rows)
    if path is None or path == "-":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _parse_algorithm(args, n: int):
    name = args.alg
    if name == "solve":
        return Solve()
    if name == "test":
        if args.s is None:
            raise SpecError("test needs --s")
        return Test(args.s)
    if name == "alphabeta":
        alpha = -n if args.alpha is None else args.alpha
        beta = n if args.beta is None else args.beta
        return AlphaBeta(alpha, beta)
    if name == "scout":
        alpha = -n if args.alpha is None else args.alpha
        beta = n if args.beta is None else args.beta
        return Scout(alpha, beta)
    if name == "test_bruteforce":
        return TestBruteforce()
    if name == "test_bisection":
        return TestBisection()
    raise SpecError(f"unknown algorithm {name!r}")


def _int_list(text: str) -> list[int]:
    return [int(tok) for tok in text.split(",") if tok]


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_gen(args) -> int:
    dist = resolve_distribution(args.dist, args.n, args.b, q=args.q,
                                positive_mass=args.bimodal_mass,
                                override_bimodal=args.override_bimodal_mass)
    if isinstance(dist, BinaryParam):
        tree = generate_binary_tree(dist, args.b, args.h, args.seed)
    else:
        tree = generate_tree(dist, args.b, args.h, args.seed)
    write_tree(tree, args.out)
    print(f"wrote {args.out}: b={tree.b} h={tree.h} n={tree.n} mode={tree.mode} "
          f"root={tree.root_value}")
    return 0


def cmd_run(args) -> int:
    tree = read_tree(args.tree)
    kind = _parse_algorithm(args, tree.n)
    result = run_algorithm(kind, tree)
    print(f"value {result.value} leaf_count {result.leaf_count}")
    return 0


def _complexity_rows(dist_name: str, pmf: Pmf, b: int, n: int, h_max: int,
                     algs: list[str]):
    """Shared by `complexity` and `fig2`: logs + ratio-to-test-average."""
    tables = recursion.all_test_tables(pmf, b, n, h_max)
    need_ab = "ab" in algs or "alphabeta" in algs
    need_scout = "scout" in algs
    abt = recursion.ab_table(pmf, b, n, h_max) if need_ab else None
    sct = recursion.scout_table(pmf, b, n, h_max, tables) if need_scout else None
    rows = []
    for alg in algs:
        for h in range(h_max + 1):
            meta = recursion.meta_complexities(tables, pmf, h)
            if alg in ("ab", "alphabeta"):
                lg = abt.root_marginal_log(h)
                name = "alphabeta"
            elif alg == "scout":
                lg = sct.root_marginal_log(h)
                name = "scout"
            elif alg == "test_average":
                lg = meta.log_test_average
                name = alg
            elif alg == "test_hardest":
                lg = meta.log_hardest
                name = alg
            elif alg == "test_bruteforce":
                lg = meta.log_bruteforce
                name = alg
            elif alg == "test_bisection":
                lg = meta.log_bisection
                name = alg
            elif alg.startswith("test:"):
                s = int(alg.split(":", 1)[1])
                lg = tables[s].root_marginal_log(h)
                name = alg
            else:
                raise SpecError(f"unknown complexity algorithm {alg!r}")
            ratio = math.exp(lg - meta.log_test_average)
            rows.append([name, dist_name, b, n, h,
                         f"{lg / LOG10:.12g}", f"{ratio:.12g}"])
    return rows


COMPLEXITY_HEADER = ["alg", "dist", "b", "n", "h", "log10_complexity",
                     "ratio_to_test_avg"]


def cmd_complexity(args) -> int:
    pmf = resolve_distribution(args.dist, args.n, args.b, q=args.q,
                               positive_mass=args.bimodal_mass,
                               override_bimodal=args.override_bimodal_mass)
    if isinstance(pmf, BinaryParam):
        raise SpecError("complexity tables are defined for integer-mode trees")
    algs = [a.strip() for a in args.alg.split(",") if a.strip()]
    if args.s is not None:
        algs = [f"test:{args.s}" if a == "test" else a for a in algs]
    rows = _complexity_rows(args.dist, pmf, args.b, args.n, args.h_max, algs)
    _write_csv(args.out, COMPLEXITY_HEADER, rows)
    return 0


BRANCHING_HEADER = ["alg", "dist", "b", "n", "r", "iterations", "residual",
                    "converged"]


def cmd_branching(args) -> int:
    rows = []
    any_unconverged = False
    for dist_name in args.dist.split(","):
        for b in _int_list(args.b):
            for alg in args.alg.split(","):
                if alg == "solve":
                    if args.q is None:
                        raise SpecError("solve branching needs --q")
                    est = recursion.r_solve(args.q, b)
                    n = 1
                else:
                    pmf = resolve_distribution(dist_name, args.n, b,
                                               q=args.q,
                                               positive_mass=args.bimodal_mass,
                                               override_bimodal=args.override_bimodal_mass)
                    if isinstance(pmf, BinaryParam):
                        raise SpecError(f"{alg} needs a categorical distribution")
                    n = args.n
                    if alg == "test":
                        est = recursion.r_test_global(pmf, b, n)
                    elif alg in ("ab", "alphabeta"):
                        est = recursion.r_ab(pmf, b, n)
                    elif alg == "scout":
                        est = recursion.r_scout(pmf, b, n)
                    else:
                        raise SpecError(f"unknown branching algorithm {alg!r}")
                any_unconverged = any_unconverged or not est.converged
                rows.append([alg, dist_name, b, n, f"{est.r:.12g}",
                             est.iterations, f"{est.residual:.3g}",
                             est.converged])
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    _write_csv(args.out, BRANCHING_HEADER, rows)
    if any_unconverged and args.strict:
        print("branching: power iteration did not converge", file=sys.stderr)
        return 3
    return 0


MC_HEADER = ["algorithm", "dist", "b", "n", "h", "trials", "seed", "mean",
             "ci_low", "ci_high", "oracle", "pass"]


def _mc_checkpoints(trials: int) -> list[int]:
    if trials <= 100:
        return [trials]
    pts = np.unique(np.geomspace(100, trials, num=12).astype(int))
    return [int(p) for p in pts]


def cmd_mc(args) -> int:
    if args.alg is not None:
        dist = args.dist or ("bernoulli" if args.alg == "solve" else "uniform")
        panels = [(args.alg, dist, args.b, args.n, args.h,
                   dict(q=args.q, s=args.s))]
    else:
        panels = [(a, d, b, n, h, dict(p)) for a, d, b, n, h, p in DEFAULT_MC_PANELS]
    rows = []
    for alg, dist_name, b, n, h, extra in panels:
        extra = {k: v for k, v in extra.items() if v is not None}
        if alg == "solve":
            kind, pmf, q = Solve(), None, extra.get("q", 0.5)
        else:
            pmf = resolve_distribution(dist_name, n, b)
            q = None
            if alg == "test":
                kind = Test(extra.get("s", 1))
            elif alg in ("ab", "alphabeta"):
                kind = AlphaBeta(-n, n)
            elif alg == "scout":
                kind = Scout(-n, n)
            elif alg == "test_bruteforce":
                kind = TestBruteforce()
            elif alg == "test_bisection":
                kind = TestBisection()
            else:
                raise SpecError(f"unknown mc algorithm {alg!r}")
        base = montecarlo.McConfig(kind, b, h, args.trials, args.seed,
                                   pmf=pmf, q=q)
        oracle = montecarlo.exact_complexity(base)
        alg_label = alg if alg != "test" else f"test:{extra.get('s', 1)}"
        dist_label = dist_name if q is None else f"bernoulli:{q}"
        for i in range(args.n_seeds):
            seed = mix64(args.seed, i)
            cfg = montecarlo.McConfig(kind, b, h, args.trials, seed, pmf=pmf, q=q)
            result = montecarlo.mc_estimate(cfg)
            for c, mean, lo, hi in montecarlo.running_means(
                    result, _mc_checkpoints(args.trials), cfg):
                rows.append([alg_label, dist_label, b, n, h, c, seed,
                             f"{mean:.8g}", f"{lo:.8g}", f"{hi:.8g}",
                             f"{oracle:.8g}", lo <= oracle <= hi])
    _write_csv(args.out, MC_HEADER, rows)
    return 0


PMF_HEADER = ["dist", "n", "value", "probability"]
DIFFICULTY_HEADER = ["dist", "n", "b", "r", "log_b_r", "difficulty"]


def cmd_fig2(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    b, n = args.b, args.n
    ratio_algs = ["ab", "scout", "test_bruteforce", "test_bisection",
                  "test_hardest"]
    for dist_name in FIG2_DISTRIBUTIONS:
        pmf = resolve_distribution(dist_name, n, b)
        _write_csv(out_dir / f"fig2_{dist_name}_pmf.csv", PMF_HEADER,
                   [[dist_name, n, v, f"{pmf.prob(v):.12g}"]
                    for v in pmf.range.values()])
        diff_rows = []
        for bb in _int_list(args.b_grid):
            pmf_b = resolve_distribution(dist_name, n, bb)
            est = recursion.r_test_global(pmf_b, bb, n)
            cls = classify_difficulty(est.r, bb)
            diff_rows.append([dist_name, n, bb, f"{est.r:.12g}",
                              f"{cls.log_b_r:.8g}", cls.label])
        _write_csv(out_dir / f"fig2_{dist_name}_difficulty.csv",
                   DIFFICULTY_HEADER, diff_rows)
        rows = _complexity_rows(dist_name, pmf, b, n, args.h_max, ratio_algs)
        _write_csv(out_dir / f"fig2_{dist_name}_ratio.csv",
                   COMPLEXITY_HEADER, rows)
        print(f"fig2: wrote {dist_name} column", file=sys.stderr)
    return 0


def cmd_difficulty(args) -> int:
    rows = []
    for b in _int_list(args.b):
        pmf = resolve_distribution(args.dist, args.n, b,
                                   positive_mass=args.bimodal_mass,
                                   override_bimodal=args.override_bimodal_mass)
        if isinstance(pmf, BinaryParam):
            raise SpecError("difficulty is defined for categorical distributions")
        est = recursion.r_test_global(pmf, b, args.n)
        cls = classify_difficulty(est.r, b)
        rows.append((b, est.r, cls.log_b_r, cls.label))
    print(f"difficulty of {args.dist} (n={args.n}): "
          "easy if log_b r <= 0.55, hard if >= 0.9")
    print(f"{'b':>4} {'r':>12} {'log_b r':>9} class")
    for b, r, g, label in rows:
        print(f"{b:>4} {r:>12.6f} {g:>9.4f} {label}")
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, *names) -> None:
    if "dist" in names:
        p.add_argument("--dist", default="uniform",
                       help="uniform|triangular|cubic|bimodal|delta_n|bernoulli|file:PATH")
    if "b" in names:
        p.add_argument("--b", type=int, default=10, help="branching degree")
    if "n" in names:
        p.add_argument("--n", type=int, default=5, help="value half-range")
    if "q" in names:
        p.add_argument("--q", type=float, default=None,
                       help="Bernoulli parameter (P of drawing 0)")
    if "bimodal" in names:
        p.add_argument("--bimodal-mass", type=float, default=None,
                       help="positive mass of the bimodal distribution")
        p.add_argument("--override-bimodal-mass", action="store_true",
                       help="accept a bimodal mass <= 1/b")
    if "out" in names:
        p.add_argument("--out", default=None, help="output file (default stdout)")
    if "format" in names:
        p.add_argument("--format", choices=["csv"], default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fgames",
        description="Forward-model game-tree workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a tree file")
    _add_common(p, "dist", "b", "n", "q", "bimodal")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("run", help="run an algorithm on a tree file")
    p.add_argument("--alg", required=True,
                   help="solve|test|alphabeta|scout|test_bruteforce|test_bisection")
    p.add_argument("--in", dest="tree", required=True, help="tree file")
    p.add_argument("--s", type=int, default=None, help="TEST threshold")
    p.add_argument("--alpha", type=int, default=None)
    p.add_argument("--beta", type=int, default=None)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("complexity", help="exact per-height complexity CSV")
    _add_common(p, "dist", "b", "n", "q", "bimodal", "out", "format")
    p.add_argument("--h-max", type=int, default=5000)
    p.add_argument("--alg", default="test_average,ab,scout",
                   help="comma list: test|test_average|test_hardest|"
                        "test_bruteforce|test_bisection|ab|scout")
    p.add_argument("--s", type=int, default=None, help="threshold for alg=test")
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("branching", help="branching factors over a grid")
    _add_common(p, "n", "q", "bimodal", "out", "format")
    p.add_argument("--dist", default="uniform", help="comma list of distributions")
    p.add_argument("--b", default="10", help="comma list of branching degrees")
    p.add_argument("--alg", default="test", help="comma list: test|ab|scout|solve")
    p.add_argument("--strict", action="store_true",
                   help="exit 3 if any power iteration fails to converge")
    p.set_defaults(func=cmd_branching)

    p = sub.add_parser("mc", help="Monte-Carlo validation CSV")
    _add_common(p, "q", "out", "format")
    p.add_argument("--alg", default=None,
                   help="single panel: solve|test|alphabeta|scout|"
                        "test_bruteforce|test_bisection (default: panel grid)")
    p.add_argument("--dist", default=None)
    p.add_argument("--b", type=int, default=3)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--h", type=int, default=2)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-seeds", type=int, default=5)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("fig2", help="CSV bundle for the three-row figure grid")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--b", type=int, default=10)
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--h-max", type=int, default=2000)
    p.add_argument("--b-grid", default="2,3,4,6,8,10,12,16",
                   help="b values for the difficulty row")
    p.set_defaults(func=cmd_fig2)

    p = sub.add_parser("difficulty", help="classify instance difficulty")
    _add_common(p, "dist", "n", "bimodal")
    p.add_argument("--b", default="2,4,8,16", help="comma list")
    p.set_defaults(func=cmd_difficulty)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FgamesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
