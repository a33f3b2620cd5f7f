"""Asymptotic branching factors: spectral radii of the level operators,
the difficulty spectrum they induce, and the binary SOLVE closed forms.
"""

import math

from fgames import (Pmf, r_ab, r_scout, r_test_global, saks_bound,
                    solve_branching, t_coeff, xi_root)
from fgames.cli import classify_difficulty

b, n = 10, 5
print(f"difficulty spectrum at b={b}, n={n} (sqrt(b)={math.sqrt(b):.3f}, "
      f"worst-case bound={saks_bound(b):.3f}):")
for name, pmf in [("uniform", Pmf.uniform(n)),
                  ("triangular", Pmf.triangular(n)),
                  ("cubic", Pmf.cubic(n)),
                  ("bimodal 0.2", Pmf.bimodal_uniform(n, 0.2)),
                  ("delta_n", Pmf.delta_n(n))]:
    est = r_test_global(pmf, b, n)
    cls = classify_difficulty(est.r, b)
    print(f"  {name:12s} r = {est.r:8.5f}  log_b r = {cls.log_b_r:.3f}  "
          f"-> {cls.label}")

print("\npoint mass on n attains the ordering-invariant worst case exactly:")
for bb in (2, 4, 8):
    est = r_test_global(Pmf.delta_n(1), bb, 1)
    print(f"  b={bb:2d}: r_TEST = {est.r:.9f}   bound = {saks_bound(bb):.9f}")

print("\nalpha-beta asymptotically matches the hardest TEST (scout too):")
pmf = Pmf.triangular(2)
print(f"  triangular b=3 n=2: r_TEST  = {r_test_global(pmf, 3, 2).r:.8f}")
print(f"                      r_AB    = {r_ab(pmf, 3, 2).r:.8f}")
print(f"                      r_SCOUT = {r_scout(pmf, 3, 2).r:.8f}")

print("\nbinary SOLVE spans the whole difficulty range as q moves:")
for q in (1.0, 0.5, 0.25, 1 / 8, 0.0):
    print(f"  q={q:5.3f}: t = {t_coeff(q, 8):6.3f},  r = {solve_branching(q, 8):.4f}"
          f"   (sqrt(8)={math.sqrt(8):.4f}, bound={saks_bound(8):.4f})")

xi = xi_root(2)
print(f"\nstandard-model reference: xi_2 = {xi:.6f}, critical "
      f"r = xi/(1-xi) = {xi / (1 - xi):.6f}")
