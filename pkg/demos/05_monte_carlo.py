"""Monte-Carlo validation: seeded simulation on sampled trees converges to
the recursion oracles, with bootstrap confidence intervals.
"""

from fgames import (McConfig, Pmf, exact_complexity, mc_estimate,
                    validate_against_oracle)
from fgames import solvers as sv
from fgames.montecarlo import running_means

cfg = McConfig(sv.AlphaBeta(-2, 2), b=3, h=4, trials=20_000, master_seed=5,
               pmf=Pmf.uniform(2))
oracle = exact_complexity(cfg)
result = mc_estimate(cfg)
print(f"alpha-beta, uniform, b=3, n=2, h=4")
print(f"  exact oracle       : {oracle:.4f}")
print(f"  running mean (95% bootstrap CI):")
for c, mean, lo, hi in running_means(result, [100, 1000, 5000, 20000], cfg):
    inside = "ok" if lo <= oracle <= hi else "MISS"
    print(f"    {c:6d} trials: {mean:7.4f}  [{lo:7.4f}, {hi:7.4f}]  {inside}")

print("\n5-seed validation of the binary SOLVE closed recursion (q=0.3, h=6):")
cfg = McConfig(sv.Solve(), b=2, h=6, trials=10_000, master_seed=1, q=0.3)
report = validate_against_oracle(cfg, n_seeds=5)
for check in report.checks:
    flag = "pass" if check.passed else "MISS"
    print(f"  seed {check.master_seed:>20d}: mean {check.mean:7.4f} "
          f"[{check.ci_low:7.4f}, {check.ci_high:7.4f}] vs "
          f"oracle {check.oracle:.4f}  {flag}")
print("all seeds covered the oracle:", report.all_passed)
