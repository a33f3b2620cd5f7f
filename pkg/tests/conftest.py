"""Shared test tooling.

The enumeration oracle walks every forward-model outcome of a small tree
shape with exact Fraction probabilities and runs the real solvers on each
explicit tree, giving expected leaf counts that are independent of the
recursion engine.
"""

from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from fgames import tree_from_values
from fgames.trees import subtree_size


def uniform_fractions(n):
    return {v: Fraction(1, 2 * n + 1) for v in range(-n, n + 1)}


def triangular_fractions(n):
    total = sum(v + n + 1 for v in range(-n, n + 1))
    return {v: Fraction(v + n + 1, total) for v in range(-n, n + 1)}


def delta_fractions(n):
    return {v: Fraction(1 if v == n else 0) for v in range(-n, n + 1)}


def enumerate_forward_trees(x, h, b, n, probs):
    """Yield (nested tree, probability) over all forward-model outcomes
    below a root of value x; nested tree = (value, [children])."""
    if h == 0:
        yield (x, []), Fraction(1)
        return
    mass = sum(probs[v] for v in range(-x, n + 1))
    trunc = {v: probs[v] / mass for v in range(-x, n + 1) if probs[v] > 0}
    support = sorted(trunc)
    for k in range(b):
        for normals in product(support, repeat=b - 1):
            child_values = list(normals[:k]) + [-x] + list(normals[k:])
            p_level = Fraction(1, b)
            for v in normals:
                p_level *= trunc[v]
            expansions = [list(enumerate_forward_trees(v, h - 1, b, n, probs))
                          for v in child_values]
            for combo in product(*expansions):
                prob = p_level
                for _, cp in combo:
                    prob *= cp
                yield (x, [t for t, _ in combo]), prob


def nested_to_tree(nested, b, h, n, mode="int"):
    """Flatten a nested (value, children) tree into a preorder GameTree."""
    values = np.zeros(subtree_size(b, h + 1), dtype=np.int64)

    def fill(node, pos, depth):
        value, kids = node
        values[pos] = value
        span = subtree_size(b, h - depth) if depth < h else 0
        for k, kid in enumerate(kids):
            fill(kid, pos + 1 + k * span, depth + 1)

    fill(nested, 0, 0)
    return tree_from_values(values, b, h, n, mode)


def expected_leaf_count(x, h, b, n, probs, run):
    """Exact E[leaf count | root = x] for `run(tree) -> AlgorithmResult`."""
    total = Fraction(0)
    mass = Fraction(0)
    for nested, prob in enumerate_forward_trees(x, h, b, n, probs):
        tree = nested_to_tree(nested, b, h, n)
        total += prob * run(tree).leaf_count
        mass += prob
    assert mass == 1
    return total


@pytest.fixture
def uniform_n1():
    from fgames import Pmf
    return Pmf.uniform(1)
