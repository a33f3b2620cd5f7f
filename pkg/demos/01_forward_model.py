"""Forward-model basics: sampling trees whose internal values are drawn
top-down under the negamax constraint.

Every node hands its negated value to one uniformly chosen child; the
other children draw from the level distribution truncated to keep the
constraint satisfiable. The tree is therefore solved by construction.
"""

import numpy as np

from fgames import (Pmf, RngStream, check_negamax_consistency, forward_sample,
                    generate_binary_tree, generate_tree, negamax_value,
                    read_tree, write_tree)

pmf = Pmf.uniform(2)
print("level distribution:", dict(zip(range(-2, 3), np.round(pmf.p, 3))))

# one sampling step: children of a node holding value 1
rng = RngStream(2024)
for _ in range(3):
    print("children of x=1:", forward_sample(1, h=3, b=4, pmf=pmf, rng=rng))

# a whole tree; the stored root value IS the negamax value
tree = generate_tree(pmf, b=3, h=4, seed=7)
print(f"\ntree b={tree.b} h={tree.h}: {tree.num_nodes} nodes, "
      f"root value {tree.root_value}")
print("negamax recomputation:", negamax_value(tree))
print("whole tree consistent:", check_negamax_consistency(tree))

# binary (win/loss) mode: negation is the complement 1 - x
bt = generate_binary_tree(q=0.4, b=2, h=5, seed=11)
print(f"\nbinary tree root: {bt.root_value} "
      f"({'win' if bt.root_value else 'loss'} for the player to move)")

# bit-exact text round trip
write_tree(tree, "/tmp/demo.tree")
again = read_tree("/tmp/demo.tree")
print("\nfile round trip identical:", bool(np.array_equal(tree.values, again.values)))

# determinism: one seed, one tree
same = generate_tree(pmf, b=3, h=4, seed=7)
print("same seed, same tree:", bool(np.array_equal(tree.values, same.values)))
