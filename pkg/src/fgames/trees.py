"""Forward-model tree generation, the negamax ground-truth oracle, and a
bit-exact text format for trees.

A tree of branching degree b and height h is stored as a flat preorder
array of node values; the uniform arity makes the structure implicit.
Sampling follows the forward model: one uniformly chosen child inherits
the negated parent value, the remaining b-1 children draw independently
from the parent-conditional truncated distribution.  Binary-valued trees
use the complement 1-x as negation, which is the win/loss reading of the
same constraint.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (InvalidHeightError, ParseError, Pmf, StructureError,
                   truncate)
from .rng import (ROOT_DRAW_INDEX, RngStream, mix64_v, node_stream,
                  uniforms_v)


def subtree_size(b: int, levels: int) -> int:
    """Number of nodes in a complete b-ary tree with `levels` levels."""
    return (b ** levels - 1) // (b - 1)


@dataclass(frozen=True)
class GameTree:
    """Explicit b-ary tree of height h with per-node values in preorder."""

    b: int
    h: int
    n: int
    mode: str  # "int" or "bin"
    values: np.ndarray
    seed: int | None = None

    def __post_init__(self):
        if self.b < 2:
            raise ValueError(f"branching degree must be >= 2, got {self.b}")
        if self.h < 0:
            raise ValueError(f"height must be >= 0, got {self.h}")
        if self.mode not in ("int", "bin"):
            raise ValueError(f"mode must be 'int' or 'bin', got {self.mode!r}")
        vals = np.asarray(self.values, dtype=np.int64)
        object.__setattr__(self, "values", vals)
        expected = subtree_size(self.b, self.h + 1)
        if vals.shape != (expected,):
            raise StructureError(
                f"expected {expected} nodes for b={self.b}, h={self.h}, "
                f"got {vals.shape[0]}")
        vals.setflags(write=False)

    @property
    def num_nodes(self) -> int:
        return self.values.shape[0]

    @property
    def root_value(self) -> int:
        return int(self.values[0])

    def children(self, pos: int, depth: int) -> list[int]:
        """Preorder indices of the children of the node at (pos, depth)."""
        if depth >= self.h:
            return []
        span = subtree_size(self.b, self.h - depth)
        return [pos + 1 + k * span for k in range(self.b)]

    def negate(self, v: int) -> int:
        return 1 - v if self.mode == "bin" else -v


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def _sample_from_cdf(cdf: np.ndarray, u: float) -> int:
    # number of cdf entries <= u; cdf[-1] == 1.0 > u keeps this in range
    return int(np.searchsorted(cdf, u, side="right"))


def _truncated_cdfs(pmf: Pmf) -> np.ndarray:
    """Row x+n holds the cdf of truncate(pmf, -x); last entry forced to 1."""
    n = pmf.n
    V = 2 * n + 1
    rows = np.zeros((V, V))
    for x in range(-n, n + 1):
        t = truncate(pmf, -x)
        rows[x + n, (-x) + n:] = np.cumsum(t.p)
        rows[x + n, -1] = 1.0
    return rows


def _binary_cdfs(q: float) -> np.ndarray:
    # row indexed by parent value: x=0 forces children to 1, x=1 draws B(q)
    return np.array([[0.0, 1.0], [q, 1.0]])


def forward_sample(x: int, h: int, b: int, pmf: Pmf, rng: RngStream) -> list[int]:
    """Sample the b children of a node with value x, enforcing the negamax
    constraint: one uniformly chosen position holds -x, the rest draw from
    pmf conditioned on being >= -x.

    Leaves have no children; calling this with h < 1 is an error.
    """
    if h < 1:
        raise InvalidHeightError(f"nodes at height {h} have no children")
    if not pmf.range.contains(x):
        raise ValueError(f"value {x} outside the pmf range")
    k_special = rng.randint(b)
    trunc = truncate(pmf, -x)
    cdf = np.cumsum(trunc.p)
    cdf[-1] = 1.0
    out = []
    for k in range(b):
        if k == k_special:
            out.append(-x)
        else:
            out.append(trunc.lower + _sample_from_cdf(cdf, rng.uniform()))
    return out


def forward_sample_binary(x: int, h: int, b: int, q: float, rng: RngStream) -> list[int]:
    """Binary-mode counterpart: the special position holds 1-x; a parent 0
    forces all children to 1, a parent 1 draws Bernoulli children with
    P(0) = q."""
    if h < 1:
        raise InvalidHeightError(f"nodes at height {h} have no children")
    if x not in (0, 1):
        raise ValueError(f"binary value must be 0 or 1, got {x}")
    k_special = rng.randint(b)
    cdf = _binary_cdfs(q)[x]
    out = []
    for k in range(b):
        if k == k_special:
            out.append(1 - x)
        else:
            out.append(_sample_from_cdf(cdf, rng.uniform()))
    return out


def _generate(cdfs: np.ndarray, lo: int, neg, root_cdf: np.ndarray,
              b: int, h: int, seed: int) -> np.ndarray:
    """Shared generator core over value offsets 0..V-1 (value = offset + lo)."""
    values = np.zeros(subtree_size(b, h + 1), dtype=np.int64)
    u = node_stream(seed, ROOT_DRAW_INDEX).uniform()
    root = lo + _sample_from_cdf(root_cdf, u)
    values[0] = root
    stack = [(0, 0, root)]
    while stack:
        pos, depth, x = stack.pop()
        if depth == h:
            continue
        span = subtree_size(b, h - depth)
        stream = node_stream(seed, pos)
        k_special = stream.randint(b)
        row = cdfs[x - lo]
        for k in range(b):
            child = pos + 1 + k * span
            v = neg(x) if k == k_special else lo + _sample_from_cdf(row, stream.uniform())
            values[child] = v
            stack.append((child, depth + 1, v))
    return values


def generate_tree(pmf: Pmf, b: int, h: int, seed: int) -> GameTree:
    """Sample a full tree: root ~ pmf, then forward sampling level by level.

    Deterministic given the seed; every node draws from a substream keyed
    by its preorder index, so content does not depend on traversal order.
    """
    root_cdf = np.cumsum(pmf.p)
    root_cdf[-1] = 1.0
    values = _generate(_truncated_cdfs(pmf), -pmf.n, lambda v: -v,
                       root_cdf, b, h, seed)
    return GameTree(b, h, pmf.n, "int", values, seed)


def generate_binary_tree(q, b: int, h: int, seed: int) -> GameTree:
    """Binary-valued forward model with mu = Bernoulli(q), q = P(0)."""
    q = float(getattr(q, "q", q))
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1], got {q}")
    root_cdf = np.array([q, 1.0])
    values = _generate(_binary_cdfs(q), 0, lambda v: 1 - v, root_cdf, b, h, seed)
    return GameTree(b, h, 1, "bin", values, seed)


def _generate_batch(cdfs: np.ndarray, lo: int, neg_off, root_cdf: np.ndarray,
                    b: int, h: int, seeds: np.ndarray) -> np.ndarray:
    """Vectorized generator; bit-identical to the single-tree path per seed."""
    seeds = np.asarray(seeds, dtype=np.uint64)
    T = seeds.shape[0]
    num = subtree_size(b, h + 1)
    values = np.zeros((T, num), dtype=np.int64)
    u = uniforms_v(mix64_v(seeds, ROOT_DRAW_INDEX), 1)
    values[:, 0] = lo + (root_cdf <= u[:, None]).sum(axis=1)
    level_pos = np.zeros((T, 1), dtype=np.int64)
    for depth in range(h):
        span = subtree_size(b, h - depth)
        keys = mix64_v(seeds[:, None], level_pos.astype(np.uint64))
        k_special = np.minimum((uniforms_v(keys, 1) * b).astype(np.int64), b - 1)
        parent = np.take_along_axis(values, level_pos, axis=1)
        rows = cdfs[parent - lo]  # (T, P, V)
        child_vals = np.zeros(level_pos.shape + (b,), dtype=np.int64)
        position = np.full(level_pos.shape, 2, dtype=np.uint64)
        for k in range(b):
            is_special = k_special == k
            u = uniforms_v(keys, position)
            drawn = lo + (rows <= u[:, :, None]).sum(axis=2)
            child_vals[:, :, k] = np.where(is_special, neg_off(parent), drawn)
            position = position + (~is_special).astype(np.uint64)
        child_pos = (level_pos[:, :, None] + 1
                     + np.arange(b, dtype=np.int64)[None, None, :] * span)
        flat = child_pos.reshape(T, -1)
        np.put_along_axis(values, flat, child_vals.reshape(T, -1), axis=1)
        level_pos = flat
    return values


def generate_trees_batch(pmf: Pmf, b: int, h: int, seeds) -> np.ndarray:
    """Values of many trees at once, one row per seed (for Monte-Carlo)."""
    root_cdf = np.cumsum(pmf.p)
    root_cdf[-1] = 1.0
    return _generate_batch(_truncated_cdfs(pmf), -pmf.n, lambda v: -v,
                           root_cdf, b, h, np.asarray(seeds))


def generate_binary_trees_batch(q: float, b: int, h: int, seeds) -> np.ndarray:
    root_cdf = np.array([q, 1.0])
    return _generate_batch(_binary_cdfs(q), 0, lambda v: 1 - v,
                           root_cdf, b, h, np.asarray(seeds))


def tree_from_values(values, b: int, h: int, n: int, mode: str = "int",
                     seed: int | None = None) -> GameTree:
    return GameTree(b, h, n, mode, np.asarray(values, dtype=np.int64), seed)


# ---------------------------------------------------------------------------
# Ground truth
# ---------------------------------------------------------------------------


def negamax_value(tree: GameTree, node: int = 0, depth: int = 0) -> int:
    """Recompute the negamax value from the leaves, ignoring stored
    internal values (the generator invariant makes them agree)."""
    kids = tree.children(node, depth)
    if not kids:
        return int(tree.values[node])
    return max(tree.negate(negamax_value(tree, k, depth + 1)) for k in kids)


def check_negamax_consistency(tree: GameTree) -> bool:
    """True iff every internal node's stored value matches Eq.-style
    propagation from its children's stored values."""

    def rec(node: int, depth: int) -> bool:
        kids = tree.children(node, depth)
        if not kids:
            return True
        want = max(tree.negate(int(tree.values[k])) for k in kids)
        if want != int(tree.values[node]):
            return False
        return all(rec(k, depth + 1) for k in kids)

    return rec(0, 0)


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------

_MAGIC = "fgame-tree v1"


def write_tree(tree: GameTree, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(_MAGIC + "\n")
        fh.write(f"b {tree.b} h {tree.h} n {tree.n} mode {tree.mode}\n")
        for v in tree.values:
            fh.write(f"{int(v)}\n")


def read_tree(path) -> GameTree:
    with open(path, "r", encoding="ascii") as fh:
        lines = fh.read().splitlines()
    if not lines or lines[0] != _MAGIC:
        raise ParseError(f"expected header {_MAGIC!r}", 1)
    if len(lines) < 2:
        raise ParseError("missing shape line", 2)
    parts = lines[1].split()
    if (len(parts) != 8 or parts[0] != "b" or parts[2] != "h"
            or parts[4] != "n" or parts[6] != "mode"):
        raise ParseError(f"expected 'b <b> h <h> n <n> mode <int|bin>', "
                         f"got {lines[1]!r}", 2)
    try:
        b, h, n = int(parts[1]), int(parts[3]), int(parts[5])
    except ValueError:
        raise ParseError(f"bad integer in {lines[1]!r}", 2) from None
    mode = parts[7]
    if mode not in ("int", "bin"):
        raise ParseError(f"mode must be int or bin, got {mode!r}", 2)
    if b < 2 or h < 0 or n < 1:
        raise ParseError(f"invalid shape b={b}, h={h}, n={n}", 2)
    body = [ln for ln in lines[2:] if ln.strip()]
    expected = subtree_size(b, h + 1)
    if len(body) != expected:
        raise StructureError(
            f"expected {expected} node values for b={b}, h={h}, got {len(body)}")
    values = np.zeros(expected, dtype=np.int64)
    for i, ln in enumerate(body):
        lineno = i + 3
        try:
            v = int(ln.strip())
        except ValueError:
            raise ParseError(f"bad integer {ln!r}", lineno) from None
        if mode == "bin" and v not in (0, 1):
            raise ParseError(f"binary value must be 0 or 1, got {v}", lineno)
        if mode == "int" and not -n <= v <= n:
            raise ParseError(f"value {v} outside [-{n}, {n}]", lineno)
        values[i] = v
    return GameTree(b, h, n, mode, values, None)
