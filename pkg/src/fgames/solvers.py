"""Instrumented game-solving algorithms: SOLVE, TEST, ALPHA-BETA, SCOUT and
the TEST-based meta-strategies.

Each run returns the computed value together with the number of leaf
evaluations, counted with multiplicity: SCOUT and the meta-strategies may
read the same leaf more than once and every read counts.  Internal node
visits are never counted.  Children are scanned strictly left to right in
stored order; move ordering is part of the model's randomness.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import InvalidWindowError, Threshold, ValueRange, WrongModeError
from .trees import GameTree

_NEG_INF = -(1 << 60)


@dataclass(frozen=True)
class AlgorithmResult:
    value: int
    leaf_count: int


def _require_mode(tree: GameTree, mode: str, name: str) -> None:
    if tree.mode != mode:
        raise WrongModeError(f"{name} requires a {mode}-mode tree, got {tree.mode}")


# ---------------------------------------------------------------------------
# SOLVE (binary-valued trees)
# ---------------------------------------------------------------------------


def solve(tree: GameTree, node: int = 0, h: int | None = None) -> AlgorithmResult:
    """Win/loss search: scans children, stops at the first opponent loss."""
    _require_mode(tree, "bin", "solve")
    h = tree.h if h is None else h
    count = [0]
    value = _solve(tree, node, tree.h - h, count)
    return AlgorithmResult(value, count[0])


def _solve(tree: GameTree, node: int, depth: int, count: list[int]) -> int:
    if depth == tree.h:
        count[0] += 1
        return int(tree.values[node])
    best = 0
    for kid in tree.children(node, depth):
        best = max(best, 1 - _solve(tree, kid, depth + 1, count))
        if best == 1:
            break
    return best


# ---------------------------------------------------------------------------
# TEST
# ---------------------------------------------------------------------------


def test(tree: GameTree, s: int, node: int = 0, h: int | None = None) -> AlgorithmResult:
    """Certificate search: the returned value v satisfies
    (v >= s) iff (negamax value >= s)."""
    _require_mode(tree, "int", "test")
    Threshold(s).validate(ValueRange(tree.n))
    h = tree.h if h is None else h
    count = [0]
    value = _test(tree, node, tree.h - h, s, count)
    return AlgorithmResult(value, count[0])


def _test(tree: GameTree, node: int, depth: int, s: int, count: list[int]) -> int:
    if depth == tree.h:
        count[0] += 1
        return int(tree.values[node])
    best = _NEG_INF
    for kid in tree.children(node, depth):
        v = -_test(tree, kid, depth + 1, -s + 1, count)
        if v > best:
            best = v
        if best >= s:
            break
    return best


# ---------------------------------------------------------------------------
# ALPHA-BETA (fail-soft)
# ---------------------------------------------------------------------------


def alphabeta(tree: GameTree, alpha: int, beta: int, node: int = 0,
              h: int | None = None) -> AlgorithmResult:
    """With the full window (-n, n) returns the exact negamax value; with a
    narrower window, a certificate on the correct side."""
    _require_mode(tree, "int", "alphabeta")
    if alpha >= beta:
        raise InvalidWindowError(f"alpha={alpha} must be < beta={beta}")
    h = tree.h if h is None else h
    count = [0]
    value = _alphabeta(tree, node, tree.h - h, alpha, beta, count)
    return AlgorithmResult(value, count[0])


def _alphabeta(tree: GameTree, node: int, depth: int, alpha: int, beta: int,
               count: list[int]) -> int:
    if depth == tree.h:
        count[0] += 1
        return int(tree.values[node])
    best = _NEG_INF
    for kid in tree.children(node, depth):
        v = -_alphabeta(tree, kid, depth + 1, -beta, -alpha, count)
        if v > best:
            best = v
        if best >= beta:
            break
        if best > alpha:
            alpha = best
    return best


# ---------------------------------------------------------------------------
# SCOUT
# ---------------------------------------------------------------------------


def scout(tree: GameTree, alpha: int, beta: int, node: int = 0,
          h: int | None = None) -> AlgorithmResult:
    """TEST-guided search.  Guard order matters: a leaf is read (cost 1)
    before the degenerate-window check, so alpha >= beta costs 0 only on
    internal nodes.  Improving children are re-searched with the window
    (-beta, -alpha-1); the strict test makes the +1 shift sound."""
    _require_mode(tree, "int", "scout")
    h = tree.h if h is None else h
    count = [0]
    value = _scout(tree, node, tree.h - h, alpha, beta, count)
    return AlgorithmResult(value, count[0])


def _scout(tree: GameTree, node: int, depth: int, alpha: int, beta: int,
           count: list[int]) -> int:
    if depth == tree.h:
        count[0] += 1
        return int(tree.values[node])
    if alpha >= beta:
        return alpha
    for kid in tree.children(node, depth):
        probe = -_test(tree, kid, depth + 1, -alpha, count)
        if probe > alpha:
            alpha = -_scout(tree, kid, depth + 1, -beta, -alpha - 1, count)
        if alpha >= beta:
            break
    return alpha


# ---------------------------------------------------------------------------
# TEST-based meta-strategies
# ---------------------------------------------------------------------------


def test_bruteforce(tree: GameTree) -> AlgorithmResult:
    """Runs TEST(s) for every s in {-n+1, ..., n} on the same tree.  The
    root value is the largest s whose certificate passes (or -n if none);
    only the boolean outcome of each certificate is used."""
    _require_mode(tree, "int", "test_bruteforce")
    n = tree.n
    total = 0
    value = -n
    for s in range(-n + 1, n + 1):
        result = test(tree, s)
        total += result.leaf_count
        if result.value >= s:
            value = s
    return AlgorithmResult(value, total)


def test_bisection(tree: GameTree) -> AlgorithmResult:
    """Binary search over thresholds; at most ceil(log2(2n+1)) TEST runs."""
    _require_mode(tree, "int", "test_bisection")
    n = tree.n
    lo, hi = -n, n
    total = 0
    while lo < hi:
        s = lo + (hi - lo + 1) // 2  # = lo + ceil((hi-lo)/2), always in {lo+1..hi}
        result = test(tree, s)
        total += result.leaf_count
        if result.value >= s:
            lo = s
        else:
            hi = s - 1
    return AlgorithmResult(lo, total)


def bisection_thresholds(x: int, n: int) -> list[int]:
    """Thresholds the bisection probes when the true root value is x."""
    lo, hi = -n, n
    path = []
    while lo < hi:
        s = lo + (hi - lo + 1) // 2
        path.append(s)
        if x >= s:
            lo = s
        else:
            hi = s - 1
    return path


# ---------------------------------------------------------------------------
# Algorithm tags
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Solve:
    pass


@dataclass(frozen=True)
class Test:
    s: int


@dataclass(frozen=True)
class AlphaBeta:
    alpha: int
    beta: int


@dataclass(frozen=True)
class Scout:
    alpha: int
    beta: int


@dataclass(frozen=True)
class TestBruteforce:
    pass


@dataclass(frozen=True)
class TestBisection:
    pass


@dataclass(frozen=True)
class TestHardest:
    """Curve-level baseline: max over s of the expected TEST(s) cost.  It is
    defined on averaged complexities, not as a per-tree run."""


AlgorithmKind = (Solve | Test | AlphaBeta | Scout
                 | TestBruteforce | TestBisection | TestHardest)


def run_algorithm(kind: AlgorithmKind, tree: GameTree) -> AlgorithmResult:
    """Dispatch a tagged algorithm on an explicit tree."""
    match kind:
        case Solve():
            return solve(tree)
        case Test(s):
            return test(tree, s)
        case AlphaBeta(alpha, beta):
            return alphabeta(tree, alpha, beta)
        case Scout(alpha, beta):
            return scout(tree, alpha, beta)
        case TestBruteforce():
            return test_bruteforce(tree)
        case TestBisection():
            return test_bisection(tree)
        case TestHardest():
            raise ValueError("test-hardest is an averaged baseline, not a per-tree run")
    raise TypeError(f"unknown algorithm kind {kind!r}")
