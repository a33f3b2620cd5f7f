"""Instrumented solvers on one sampled tree: every run reports the number
of leaf evaluations, counted with multiplicity (SCOUT re-reads count).
"""

from fgames import (Pmf, alphabeta, generate_tree, negamax_value, scout,
                    test, test_bisection, test_bruteforce)

pmf = Pmf.triangular(3)
tree = generate_tree(pmf, b=4, h=5, seed=123)
n = tree.n
v = negamax_value(tree)
print(f"tree b={tree.b} h={tree.h} n={n}, negamax value = {v}, "
      f"{4 ** 5} leaves\n")

full = alphabeta(tree, -n, n)
print(f"alpha-beta full window : value {full.value:+d}, "
      f"{full.leaf_count} leaf reads")
sc = scout(tree, -n, n)
print(f"scout full window      : value {sc.value:+d}, "
      f"{sc.leaf_count} leaf reads (re-reads included)")
bf = test_bruteforce(tree)
print(f"test over all 2n = {2 * n} thresholds: value {bf.value:+d}, "
      f"{bf.leaf_count} leaf reads")
bi = test_bisection(tree)
print(f"test by bisection      : value {bi.value:+d}, "
      f"{bi.leaf_count} leaf reads")

print("\nnull-window identity: alphabeta(s-1, s) mirrors test(s) exactly")
for s in range(-n + 1, n + 1):
    t_run = test(tree, s)
    ab_run = alphabeta(tree, s - 1, s)
    marker = ">= s" if t_run.value >= s else "<  s"
    print(f"  s={s:+d}: test {t_run.leaf_count:4d} reads, "
          f"null-window ab {ab_run.leaf_count:4d} reads, certificate {marker}")
