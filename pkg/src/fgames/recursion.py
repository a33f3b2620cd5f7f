"""Exact average-case complexity engine.

Evaluates the conditioned-expectation recursions of TEST, ALPHA-BETA and
SCOUT (and the scalar pair for binary SOLVE) level by level in scaled
arithmetic, so heights in the thousands pose no overflow problem.  Each
level map is linear in the previous level's state vector; eliminating the
within-level child-count recursion (c from 1 to b, with the auxiliary
J states) yields an explicit nonnegative level operator whose Perron root,
found by power iteration, is the algorithm's asymptotic branching factor.

State conventions
-----------------
TEST(s) couples the two thresholds {s, -s+1}, which alternate with depth;
its states are (x, t) over that cycle.  ALPHA-BETA and SCOUT condition on
(x, alpha, beta) over all active windows alpha < beta.  SCOUT additionally
consumes the TEST layers of every threshold (its child probes), plus one
synthetic "degenerate window" component whose value is 1 at height 0 and 0
above, which reproduces the leaf-before-window guard order exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.sparse as sp
from scipy.special import logsumexp

from .core import (InvalidThresholdError, Pmf, ScaledVector, StateIndex,
                   TestStates, WindowStates, index_states, scaled_renormalize,
                   truncation_weights)
from .solvers import (AlgorithmKind, AlphaBeta, Scout, Test,
                      bisection_thresholds)

# ---------------------------------------------------------------------------
# Level systems
# ---------------------------------------------------------------------------


class _TestPairSystem:
    """Level map for one threshold pair {s, -s+1}.

    Within a level, the continuation after a non-cutting child stays in the
    same (x, t) state, so the c-recursion needs one scalar weight per state:
    pkeep = P(-X' < t | X' >= -x).
    """

    def __init__(self, pmf: Pmf, b: int, s: int):
        n = pmf.n
        if not -n + 1 <= s <= n:
            raise InvalidThresholdError(f"threshold {s} outside [{-n + 1}, {n}]")
        self.pmf, self.b, self.s = pmf, b, s
        self.index = index_states(TestStates(s), pmf.range)
        D = self.index.size
        W = truncation_weights(pmf)
        idx = self.index.index_of
        rows, cols, vals = [], [], []
        spec = np.zeros(D, dtype=np.int64)
        gate = np.zeros(D)
        pkeep = np.zeros(D)
        for i, (x, t) in enumerate(self.index.states):
            spec[i] = idx((-x, -t + 1))
            gate[i] = 1.0 if x < t else 0.0
            for xp in range(-x, n + 1):
                w = W[x + n, xp + n]
                if w == 0.0:
                    continue
                rows.append(i)
                cols.append(idx((xp, -t + 1)))
                vals.append(w)
                if -xp < t:
                    pkeep[i] += w
        self.B = sp.csr_matrix((vals, (rows, cols)), shape=(D, D))
        self.spec, self.gate, self.pkeep = spec, gate, pkeep

    def propagate(self, U: np.ndarray) -> np.ndarray:
        """Apply the level map to U of shape (D, K)."""
        Bu = self.B @ U
        pk = self.pkeep[:, None]
        g = self.gate[:, None]
        I = np.zeros_like(U)
        J = np.zeros_like(U)
        for c in range(1, self.b + 1):
            Jn = Bu + pk * J
            I = (U[self.spec] + g * J) / c + (c - 1) / c * (Bu + pk * I)
            J = Jn
        return I

    def step(self, u: np.ndarray) -> np.ndarray:
        return self.propagate(u[:, None])[:, 0]

    def matrix(self) -> sp.csr_matrix:
        return sp.csr_matrix(self.propagate(np.eye(self.index.size)))


class _AbSystem:
    """Level map for ALPHA-BETA over states (x, alpha, beta).

    The within-level continuation moves alpha up to max(alpha, -X'), so it
    is a sparse transition P between states of the same level; B gathers
    the child-call costs at the negated window.
    """

    def __init__(self, pmf: Pmf, b: int):
        n = pmf.n
        self.pmf, self.b = pmf, b
        self.index = index_states(WindowStates(), pmf.range)
        D = self.index.size
        W = truncation_weights(pmf)
        idx = self.index.index_of
        rB, cB, vB = [], [], []
        rP, cP, vP = [], [], []
        spec = np.zeros(D, dtype=np.int64)
        spec_cont = np.zeros(D, dtype=np.int64)
        gate = np.zeros(D)
        for i, (x, a, bt) in enumerate(self.index.states):
            spec[i] = idx((-x, -bt, -a))
            if x < bt:
                gate[i] = 1.0
                spec_cont[i] = idx((x, max(a, x), bt))
            for xp in range(-x, n + 1):
                w = W[x + n, xp + n]
                if w == 0.0:
                    continue
                rB.append(i)
                cB.append(idx((xp, -bt, -a)))
                vB.append(w)
                if -xp < bt:
                    rP.append(i)
                    cP.append(idx((x, max(a, -xp), bt)))
                    vP.append(w)
        self.B = sp.csr_matrix((vB, (rB, cB)), shape=(D, D))
        self.P = sp.csr_matrix((vP, (rP, cP)), shape=(D, D))
        self.spec, self.spec_cont, self.gate = spec, spec_cont, gate

    def propagate(self, U: np.ndarray) -> np.ndarray:
        Bu = self.B @ U
        g = self.gate[:, None]
        I = np.zeros_like(U)
        J = np.zeros_like(U)
        for c in range(1, self.b + 1):
            Jn = Bu + self.P @ J
            I = (U[self.spec] + g * J[self.spec_cont]) / c \
                + (c - 1) / c * (Bu + self.P @ I)
            J = Jn
        return I

    def step(self, u: np.ndarray) -> np.ndarray:
        return self.propagate(u[:, None])[:, 0]

    def matrix(self) -> sp.csr_matrix:
        return sp.csr_matrix(self.propagate(np.eye(self.index.size)))


class _AllTestLayout:
    """Concatenated state layout over the threshold pairs s = 1..n."""

    def __init__(self, systems: Sequence[_TestPairSystem]):
        self.systems = list(systems)
        sizes = [s.index.size for s in self.systems]
        self.offsets = np.concatenate([[0], np.cumsum(sizes)])
        self.dim = int(self.offsets[-1])

    def gindex(self, x: int, t: int) -> int:
        pair = t if t >= 1 else 1 - t
        system = self.systems[pair - 1]
        return int(self.offsets[pair - 1]) + system.index.index_of((x, t))

    def matrix(self) -> sp.csr_matrix:
        return sp.block_diag([s.matrix() for s in self.systems]).tocsr()


class _ScoutSystem:
    """Level map for SCOUT over states (x, alpha, beta) plus one trailing
    degenerate-window component.

    Inputs per level: the all-thresholds TEST layer (child probes at
    threshold -alpha) and the extended SCOUT layer (inner re-searches at
    window (-beta, -alpha-1), degenerate when beta = alpha + 1).
    """

    def __init__(self, pmf: Pmf, b: int, layout: _AllTestLayout):
        n = pmf.n
        self.pmf, self.b, self.layout = pmf, b, layout
        self.index = index_states(WindowStates(), pmf.range)
        DS = self.index.size
        self.DEG = DS  # extended component index
        W = truncation_weights(pmf)
        idx = self.index.index_of

        def inner(xp: int, a: int, bt: int) -> int:
            # re-search window (-bt, -a-1); degenerate exactly when bt == a+1
            return self.DEG if bt == a + 1 else idx((xp, -bt, -a - 1))

        rT, cT, vT = [], [], []
        rS, cS, vS = [], [], []
        rP, cP, vP = [], [], []
        t_spec = np.zeros(DS, dtype=np.int64)
        s_spec = np.zeros(DS, dtype=np.int64)
        s_gate = np.zeros(DS)
        spec_cont = np.zeros(DS, dtype=np.int64)
        gate = np.zeros(DS)
        for i, (x, a, bt) in enumerate(self.index.states):
            t_spec[i] = layout.gindex(-x, -a)
            if a < x:
                s_gate[i] = 1.0
                s_spec[i] = inner(-x, a, bt)
            if x < bt:
                gate[i] = 1.0
                spec_cont[i] = idx((x, max(a, x), bt))
            for xp in range(-x, n + 1):
                w = W[x + n, xp + n]
                if w == 0.0:
                    continue
                rT.append(i)
                cT.append(layout.gindex(xp, -a))
                vT.append(w)
                if a < -xp:
                    rS.append(i)
                    cS.append(inner(xp, a, bt))
                    vS.append(w)
                if -xp < bt:
                    rP.append(i)
                    cP.append(idx((x, max(a, -xp), bt)))
                    vP.append(w)
        self.T = sp.csr_matrix((vT, (rT, cT)), shape=(DS, layout.dim))
        self.S = sp.csr_matrix((vS, (rS, cS)), shape=(DS, DS + 1))
        self.P = sp.csr_matrix((vP, (rP, cP)), shape=(DS, DS))
        self.t_spec, self.s_spec, self.s_gate = t_spec, s_spec, s_gate
        self.spec_cont, self.gate = spec_cont, gate

    def propagate(self, UT: np.ndarray, US: np.ndarray) -> np.ndarray:
        """UT: (DT, K) test layer; US: (DS+1, K) extended scout layer."""
        norm = self.T @ UT + self.S @ US
        spec = UT[self.t_spec] + self.s_gate[:, None] * US[self.s_spec]
        g = self.gate[:, None]
        I = np.zeros_like(norm)
        J = np.zeros_like(norm)
        for c in range(1, self.b + 1):
            Jn = norm + self.P @ J
            I = (spec + g * J[self.spec_cont]) / c \
                + (c - 1) / c * (norm + self.P @ I)
            J = Jn
        return I

    def step(self, ut: np.ndarray, us_ext: np.ndarray) -> np.ndarray:
        return self.propagate(ut[:, None], us_ext[:, None])[:, 0]

    def combined_matrix(self) -> sp.csr_matrix:
        """Operator over [all-test states | scout states | degenerate]."""
        DT, DS = self.layout.dim, self.index.size
        D = DT + DS + 1
        UT = np.zeros((DT, D))
        UT[:, :DT] = np.eye(DT)
        US = np.zeros((DS + 1, D))
        US[:, DT:] = np.eye(DS + 1)
        scout_rows = sp.csr_matrix(self.propagate(UT, US))
        top = sp.hstack([self.layout.matrix(), sp.csr_matrix((DT, DS + 1))])
        return sp.vstack([top, scout_rows, sp.csr_matrix((1, D))]).tocsr()


# ---------------------------------------------------------------------------
# Complexity tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComplexityTable:
    """Per-height conditioned complexities I^state(h, c=b) as scaled vectors,
    h = 0 .. h_max, plus the pmf-weighted root marginal."""

    kind: AlgorithmKind
    pmf: Pmf
    b: int
    index: StateIndex
    layers: tuple[ScaledVector, ...]

    @property
    def n(self) -> int:
        return self.pmf.n

    @property
    def h_max(self) -> int:
        return len(self.layers) - 1

    def _marginal_states(self):
        n = self.n
        if isinstance(self.kind, Test):
            return [(x, self.kind.s) for x in self.pmf.range.values()]
        return [(x, -n, n) for x in self.pmf.range.values()]

    def value_log(self, h: int, state) -> float:
        """Natural log of I^state(h)."""
        return self.layers[h].log_value(self.index.index_of(state))

    def value(self, h: int, state) -> float:
        return self.layers[h].value(self.index.index_of(state))

    def root_marginal_log(self, h: int, pmf: Pmf | None = None) -> float:
        pmf = self.pmf if pmf is None else pmf
        layer = self.layers[h]
        idx = [self.index.index_of(st) for st in self._marginal_states()]
        inner = float(pmf.p @ layer.significands[idx])
        return math.log(inner) + layer.log_scale

    def root_marginal(self, h: int, pmf: Pmf | None = None) -> float:
        return math.exp(self.root_marginal_log(h, pmf))


def root_marginal(table: ComplexityTable, pmf: Pmf, h: int) -> float:
    """Expectation over the root value of the table's conditioned entries
    (full-window entries for AB/SCOUT, threshold-s entries for TEST)."""
    return table.root_marginal(h, pmf)


def _iterate(step, dim: int, h_max: int) -> tuple[ScaledVector, ...]:
    layers = [ScaledVector.ones(dim)]
    for _ in range(h_max):
        prev = layers[-1]
        sig = step(prev.significands)
        layers.append(scaled_renormalize(ScaledVector(sig, prev.log_scale)))
    return tuple(layers)


def test_table(pmf: Pmf, b: int, n: int, s: int, h_max: int) -> ComplexityTable:
    """Exact TEST(s) complexities per (x, threshold) state up to h_max."""
    _check_params(pmf, b, n)
    system = _TestPairSystem(pmf, b, s)
    layers = _iterate(system.step, system.index.size, h_max)
    return ComplexityTable(Test(s), pmf, b, system.index, layers)


def all_test_tables(pmf: Pmf, b: int, n: int, h_max: int) -> dict[int, ComplexityTable]:
    """Tables for every threshold in {-n+1, ..., n}; the two thresholds of a
    pair {s, 1-s} share the same computed layers."""
    _check_params(pmf, b, n)
    tables: dict[int, ComplexityTable] = {}
    for s in range(1, n + 1):
        system = _TestPairSystem(pmf, b, s)
        layers = _iterate(system.step, system.index.size, h_max)
        tables[s] = ComplexityTable(Test(s), pmf, b, system.index, layers)
        tables[1 - s] = ComplexityTable(Test(1 - s), pmf, b, system.index, layers)
    return tables


def ab_table(pmf: Pmf, b: int, n: int, h_max: int) -> ComplexityTable:
    """Exact ALPHA-BETA complexities per (x, alpha, beta) state up to h_max."""
    _check_params(pmf, b, n)
    system = _AbSystem(pmf, b)
    layers = _iterate(system.step, system.index.size, h_max)
    return ComplexityTable(AlphaBeta(-n, n), pmf, b, system.index, layers)


def scout_table(pmf: Pmf, b: int, n: int, h_max: int,
                test_tables: dict[int, ComplexityTable],
                degenerate_leaf_cost: float = 1.0) -> ComplexityTable:
    """Exact SCOUT complexities; consumes the TEST tables of all 2n
    thresholds (SCOUT's child probes use threshold -alpha).

    `degenerate_leaf_cost` selects the cost convention for a degenerate
    window reaching a leaf.  The default 1 is the literal guard order of
    the pseudo-code (leaf read before the window check), which is what the
    simulator implements and what Monte-Carlo runs must match.  Passing 0
    gives the idealized convention under which a degenerate call is free
    at every height; that is the cost model of the bruteforce-domination
    theorem, whose inequality the literal model violates at small heights.
    """
    _check_params(pmf, b, n)
    pair_tables = []
    for s in range(1, n + 1):
        if s not in test_tables:
            raise ValueError(f"missing TEST table for threshold {s}")
        t = test_tables[s]
        if t.h_max < h_max or t.b != b or t.n != n:
            raise ValueError(f"TEST table for s={s} does not cover the request")
        pair_tables.append(t)
    layout = _AllTestLayout([_TestPairSystem(pmf, b, s) for s in range(1, n + 1)])
    system = _ScoutSystem(pmf, b, layout)
    DS = system.index.size

    def test_layer(h: int) -> tuple[np.ndarray, float]:
        scales = [t.layers[h].log_scale for t in pair_tables]
        top = max(scales)
        sig = np.concatenate([
            t.layers[h].significands * math.exp(ls - top)
            for t, ls in zip(pair_tables, scales)
        ])
        return sig, top

    layers = [ScaledVector.ones(DS)]
    for h in range(1, h_max + 1):
        ut, lt = test_layer(h - 1)
        prev = layers[-1]
        scale = max(lt, prev.log_scale)
        ut = ut * math.exp(lt - scale)
        deg = degenerate_leaf_cost * math.exp(-scale) if h - 1 == 0 else 0.0
        us = np.append(prev.significands * math.exp(prev.log_scale - scale), deg)
        sig = system.step(ut, us)
        layers.append(scaled_renormalize(ScaledVector(sig, scale)))
    n_ = pmf.n
    return ComplexityTable(Scout(-n_, n_), pmf, b, system.index, tuple(layers))


def _check_params(pmf: Pmf, b: int, n: int) -> None:
    if b < 2:
        raise ValueError(f"branching degree must be >= 2, got {b}")
    if pmf.n != n:
        raise ValueError(f"pmf has n={pmf.n}, expected {n}")


# ---------------------------------------------------------------------------
# Meta-strategy complexities (TEST-derived baselines)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MetaComplexities:
    """Log-domain expected complexities of the TEST-based baselines."""

    log_bruteforce: float
    log_bisection: float
    log_hardest: float
    log_test_average: float

    @property
    def bruteforce(self) -> float:
        return math.exp(self.log_bruteforce)

    @property
    def bisection(self) -> float:
        return math.exp(self.log_bisection)

    @property
    def hardest(self) -> float:
        return math.exp(self.log_hardest)

    @property
    def test_average(self) -> float:
        return math.exp(self.log_test_average)


def meta_complexities(test_tables: dict[int, ComplexityTable], pmf: Pmf,
                      h: int) -> MetaComplexities:
    """Bruteforce sums every threshold, bisection sums the deterministic
    probe path of the true root value, hardest takes the most expensive
    threshold on average, and test-average divides bruteforce by 2n."""
    n = pmf.n
    thresholds = list(range(-n + 1, n + 1))
    per_s = np.array([test_tables[s].root_marginal_log(h, pmf) for s in thresholds])
    log_bf = float(logsumexp(per_s))
    log_hard = float(per_s.max())
    log_avg = log_bf - math.log(len(thresholds))
    terms = []
    for x in pmf.range.values():
        w = pmf.prob(x)
        if w == 0.0:
            continue
        path = bisection_thresholds(x, n)
        logs = [test_tables[s].value_log(h, (x, s)) for s in path]
        terms.append(math.log(w) + logsumexp(logs))
    log_bis = float(logsumexp(terms))
    return MetaComplexities(log_bf, log_bis, log_hard, log_avg)


# ---------------------------------------------------------------------------
# Level operators and branching factors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LevelOperator:
    """Nonnegative matrix taking the height-(h-1) state vector to height h.

    `growth_mask` marks the components whose growth defines the branching
    factor (all of them except for SCOUT, where only the scout block is
    tracked; the operator also carries the driving TEST states)."""

    matrix: sp.csr_matrix
    description: str
    growth_mask: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ v


@dataclass(frozen=True)
class BranchingFactorEstimate:
    r: float
    iterations: int
    residual: float
    converged: bool


def test_level_operator(pmf: Pmf, b: int, n: int, s: int) -> LevelOperator:
    _check_params(pmf, b, n)
    return LevelOperator(_TestPairSystem(pmf, b, s).matrix(), f"test(s={s})")


def ab_level_operator(pmf: Pmf, b: int, n: int) -> LevelOperator:
    _check_params(pmf, b, n)
    return LevelOperator(_AbSystem(pmf, b).matrix(), "alphabeta")


def scout_level_operator(pmf: Pmf, b: int, n: int) -> LevelOperator:
    """Combined driven operator over [all TEST states | scout states |
    degenerate]; growth is measured on the scout block."""
    _check_params(pmf, b, n)
    layout = _AllTestLayout([_TestPairSystem(pmf, b, s) for s in range(1, n + 1)])
    system = _ScoutSystem(pmf, b, layout)
    M = system.combined_matrix()
    mask = np.zeros(M.shape[0], dtype=bool)
    mask[layout.dim: layout.dim + system.index.size] = True
    return LevelOperator(M, "scout", mask)


def solve_level_operator(q: float, b: int) -> LevelOperator:
    """Binary SOLVE over states (x=0, x=1): I0(h) = b I1(h-1),
    I1(h) = I0(h-1) + t I1(h-1)."""
    t = t_coeff(q, b)
    return LevelOperator(sp.csr_matrix(np.array([[0.0, b], [1.0, t]])),
                         f"solve(q={q})")


def branching_factor(op: LevelOperator, tol: float = 1e-10, window: int = 10,
                     max_steps: int = 10 ** 5) -> BranchingFactorEstimate:
    """Power iteration from the all-ones vector with sup-norm renormalization.

    The growth estimate is the geometric mean of two consecutive step
    ratios, which neutralizes the parity oscillation of the two-threshold
    cycle; convergence requires the estimate to move by less than `tol`
    relatively over `window` consecutive steps.  On hitting the step cap
    the best estimate is returned with converged=False.
    """
    M = op.matrix
    mask = op.growth_mask
    v = np.ones(op.dim)
    prev_ratio = None
    history: list[float] = []
    for step in range(1, max_steps + 1):
        w = M @ v
        if mask is None:
            num, den = w.max(), v.max()
        else:
            num, den = w[mask].max(), v[mask].max()
        ratio = num / den
        v = w / w.max()
        if prev_ratio is not None:
            history.append(math.sqrt(ratio * prev_ratio))
            if len(history) > window:
                recent = history[-window - 1:]
                residual = (max(recent) - min(recent)) / max(recent)
                if residual < tol:
                    return BranchingFactorEstimate(history[-1], step, residual, True)
        prev_ratio = ratio
    recent = history[-window - 1:] if len(history) > window else history
    residual = (max(recent) - min(recent)) / max(recent) if recent else math.inf
    return BranchingFactorEstimate(history[-1] if history else math.nan,
                                   max_steps, residual, False)


def r_test(pmf: Pmf, b: int, n: int, s: int, **kw) -> BranchingFactorEstimate:
    return branching_factor(test_level_operator(pmf, b, n, s), **kw)


def r_test_global(pmf: Pmf, b: int, n: int, **kw) -> BranchingFactorEstimate:
    """Max over thresholds of the per-threshold spectral radius.  The pair
    {s, 1-s} shares one level operator, so pairs s = 1..n cover all 2n
    thresholds."""
    best: BranchingFactorEstimate | None = None
    all_converged = True
    for s in range(1, n + 1):
        est = r_test(pmf, b, n, s, **kw)
        all_converged = all_converged and est.converged
        if best is None or est.r > best.r:
            best = est
    return BranchingFactorEstimate(best.r, best.iterations, best.residual,
                                   all_converged)


def r_ab(pmf: Pmf, b: int, n: int, **kw) -> BranchingFactorEstimate:
    return branching_factor(ab_level_operator(pmf, b, n), **kw)


def r_scout(pmf: Pmf, b: int, n: int, **kw) -> BranchingFactorEstimate:
    return branching_factor(scout_level_operator(pmf, b, n), **kw)


def r_solve(q: float, b: int, **kw) -> BranchingFactorEstimate:
    return branching_factor(solve_level_operator(q, b), **kw)


# ---------------------------------------------------------------------------
# Binary SOLVE: closed forms and reference formulas
# ---------------------------------------------------------------------------


def t_coeff(q: float, b: int) -> float:
    """Expected number of value-1 children SOLVE evaluates before hitting a
    0-child, in the binary forward model."""
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"q must lie in [0, 1], got {q}")
    if b < 2:
        raise ValueError(f"b must be >= 2, got {b}")
    return sum((1 + (b - k - 1) * q) / b * k * (1 - q) ** k for k in range(1, b))


def solve_branching(q: float, b: int) -> float:
    """Asymptotic branching factor of SOLVE: largest root of z^2 - t z - b."""
    t = t_coeff(q, b)
    return (t + math.sqrt(t * t + 4 * b)) / 2


def saks_bound(b: int) -> float:
    """Worst-case branching factor of the ordering-invariant random model."""
    if b < 2:
        raise ValueError(f"b must be >= 2, got {b}")
    return (b - 1 + math.sqrt(b * b + 14 * b + 1)) / 4


def xi_root(b: int) -> float:
    """Positive root of x^b + x - 1 = 0, by bisection on (0, 1) to 1e-12."""
    if b < 2:
        raise ValueError(f"b must be >= 2, got {b}")
    lo, hi = 0.0, 1.0
    while hi - lo > 1e-12:
        mid = (lo + hi) / 2
        if mid ** b + mid - 1 < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def r_solve_standard(q0: float, b: int) -> float:
    """Branching factor of SOLVE under the standard (independent-leaf)
    model: sqrt(b) except at the critical probability q0 = 1 - xi_b."""
    if not 0.0 <= q0 <= 1.0:
        raise ValueError(f"q0 must lie in [0, 1], got {q0}")
    xi = xi_root(b)
    if abs(q0 - (1 - xi)) <= 1e-12:
        return xi / (1 - xi)
    return math.sqrt(b)


def r_test_standard(f_s: float, b: int) -> float:
    """Standard-model TEST reduces to SOLVE at q0 = F(s)."""
    return r_solve_standard(f_s, b)


@dataclass(frozen=True)
class SolveComplexity:
    """Recursive value of I(h) plus the two closed-form readings.

    The closed form as printed attaches weight q to the x=1-shaped term;
    deriving the marginal from q = P(root = 0) gives the q-mirrored
    pairing.  `matching_variant` records which one agrees with the
    recursion at this point (both coincide at q = 1/2).
    """

    recursive: float
    closed_form_as_printed: float
    closed_form_mirrored: float
    matching_variant: str


def _solve_mode_mix(q: float, b: int, h: int) -> tuple[float, float]:
    t = t_coeff(q, b)
    d = math.sqrt(t * t + 4 * b)
    r1, r2 = (t + d) / 2, (t - d) / 2
    amp = 0.5 + (1 + t / 2) / d
    f = lambda k: amp * r1 ** k + (1 - amp) * r2 ** k
    return f(h), b * f(h - 1)


def solve_complexity(q: float, b: int, h: int) -> SolveComplexity:
    """I(h) for binary SOLVE from the two-state recursion, alongside both
    closed-form variants (plain doubles; valid while b**h is in range)."""
    if h < 0:
        raise ValueError(f"h must be >= 0, got {h}")
    t = t_coeff(q, b)
    i0, i1 = 1.0, 1.0
    for _ in range(h):
        i0, i1 = b * i1, i0 + t * i1
    recursive = q * i0 + (1 - q) * i1
    one_shape, zero_shape = _solve_mode_mix(q, b, h)
    as_printed = q * one_shape + (1 - q) * zero_shape
    mirrored = (1 - q) * one_shape + q * zero_shape
    close = lambda v: abs(v - recursive) <= 1e-10 * abs(recursive)
    if close(as_printed) and close(mirrored):
        variant = "both"
    elif close(mirrored):
        variant = "mirrored"
    elif close(as_printed):
        variant = "as_printed"
    else:
        variant = "neither"
    return SolveComplexity(recursive, as_printed, mirrored, variant)


def solve_complexity_log(q: float, b: int, h: int) -> float:
    """ln I(h) for binary SOLVE, scaled iteration (any h)."""
    if h < 0:
        raise ValueError(f"h must be >= 0, got {h}")
    t = t_coeff(q, b)
    s0, s1, scale = 1.0, 1.0, 0.0
    for _ in range(h):
        s0, s1 = b * s1, s0 + t * s1
        top = max(s0, s1)
        s0 /= top
        s1 /= top
        scale += math.log(top)
    return math.log(q * s0 + (1 - q) * s1) + scale
