"""Exact average-case complexity from the recursive systems: no sampling,
scaled arithmetic, heights far beyond anything Monte-Carlo could reach.

The closing table reproduces the qualitative story of the finite-depth
comparison: alpha-beta drifts up to the all-thresholds TEST sum, scout
stays cheapest and eventually undercuts even the hardest single TEST.
"""

import math

from fgames import (Pmf, ab_table, all_test_tables, meta_complexities,
                    scout_table)

pmf = Pmf.uniform(1)
tables = all_test_tables(pmf, 2, 1, 4)
print("hand-checkable micro value: I_TEST^(x=1, s=1)(h=1) =",
      tables[1].value(1, (1, 1)), "(= 4/3)")

b, n, h_max = 10, 5, 2000
pmf = Pmf.uniform(n)
print(f"\ncomputing exact tables at b={b}, n={n} up to h={h_max} ...")
tests = all_test_tables(pmf, b, n, h_max)
abt = ab_table(pmf, b, n, h_max)
sct = scout_table(pmf, b, n, h_max, tests)

print(f"{'h':>6} {'log10 I_AB':>12} {'AB/avg':>8} {'SCOUT/avg':>9} "
      f"{'HARDEST/avg':>11} {'BRUTE/avg':>9}")
for h in (1, 10, 100, 500, 1000, 2000):
    meta = meta_complexities(tests, pmf, h)
    avg = meta.log_test_average
    row = (abt.root_marginal_log(h) / math.log(10),
           math.exp(abt.root_marginal_log(h) - avg),
           math.exp(sct.root_marginal_log(h) - avg),
           math.exp(meta.log_hardest - avg),
           math.exp(meta.log_bruteforce - avg))
    print(f"{h:>6} {row[0]:>12.2f} {row[1]:>8.3f} {row[2]:>9.3f} "
          f"{row[3]:>11.3f} {row[4]:>9.3f}")

print("\nat h=2000 the tree has 10^2000 leaves; alpha-beta's expected cost")
print("still fits in a scaled vector, and its ratio to the average TEST has")
print("converged onto the brute-force constant 2n =", 2 * n)
