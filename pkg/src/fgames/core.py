"""Shared value-space primitives: integer value ranges, categorical
distributions with conditional truncation, search windows and thresholds,
log-scaled vectors, and dense state indexing.

Everything here is immutable after construction and safe to share across
threads. Complexity vectors routinely reach magnitudes around b**h with
h in the thousands, far beyond double range, hence the ScaledVector
representation (significands times exp(log_scale)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

PROB_SUM_TOL = 1e-12


class FgamesError(Exception):
    """Base class for errors raised by this package."""


class ZeroMassError(FgamesError):
    """A conditional restriction left no probability mass."""


class AllZeroError(FgamesError):
    """A scaled vector with every significand equal to zero cannot be normalized."""


class ParseError(FgamesError):
    """Malformed text input; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class StructureError(FgamesError):
    """A tree file whose node list does not match its declared shape."""


class WrongModeError(FgamesError):
    """Algorithm applied to a tree of the wrong value mode (int vs bin)."""


class InvalidWindowError(FgamesError):
    """Search window with alpha >= beta where an active window is required."""


class InvalidHeightError(FgamesError):
    """Height parameter outside the operation's domain."""


class InvalidThresholdError(FgamesError):
    """Threshold outside {-n+1, ..., n}."""


class SpecError(FgamesError):
    """Inconsistent distribution specification."""


@dataclass(frozen=True)
class ValueRange:
    """The integer value set {-n, ..., n}."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")

    @property
    def size(self) -> int:
        return 2 * self.n + 1

    def values(self) -> range:
        return range(-self.n, self.n + 1)

    def contains(self, v: int) -> bool:
        return -self.n <= v <= self.n

    def offset(self, v: int) -> int:
        """Array index of value v (values stored in ascending order)."""
        if not self.contains(v):
            raise ValueError(f"value {v} outside [-{self.n}, {self.n}]")
        return v + self.n


@dataclass(frozen=True)
class Pmf:
    """Categorical distribution over {-n, ..., n}.

    Invariants enforced at construction: probabilities are nonnegative, sum
    to 1 within 1e-12, and the top atom has positive mass.  The last
    condition guarantees every conditional restriction to {lower, ..., n}
    is well defined, since n belongs to every such set.
    """

    range: ValueRange
    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        object.__setattr__(self, "p", p)
        if p.shape != (self.range.size,):
            raise ValueError(f"expected {self.range.size} probabilities, got {p.shape}")
        if np.any(p < 0) or np.any(p > 1):
            raise ValueError("probabilities must lie in [0, 1]")
        if abs(p.sum() - 1.0) > PROB_SUM_TOL:
            raise ValueError(f"probabilities sum to {p.sum()!r}, not 1")
        if p[-1] <= 0:
            raise ValueError("p_n must be positive so every truncation has mass")
        p.setflags(write=False)

    @property
    def n(self) -> int:
        return self.range.n

    def prob(self, v: int) -> float:
        return float(self.p[self.range.offset(v)])

    def cdf(self, v: int) -> float:
        """P(X <= v)."""
        return float(self.p[: self.range.offset(v) + 1].sum())

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_weights(n: int, weights) -> "Pmf":
        w = np.asarray(weights, dtype=float)
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        total = w.sum()
        if total <= 0:
            raise ValueError("weights must have positive total")
        return Pmf(ValueRange(n), w / total)

    @staticmethod
    def uniform(n: int) -> "Pmf":
        return Pmf.from_weights(n, np.ones(2 * n + 1))

    @staticmethod
    def delta_n(n: int) -> "Pmf":
        w = np.zeros(2 * n + 1)
        w[-1] = 1.0
        return Pmf(ValueRange(n), w)

    @staticmethod
    def triangular(n: int) -> "Pmf":
        return Pmf.from_weights(n, [v + n + 1 for v in range(-n, n + 1)])

    @staticmethod
    def cubic(n: int) -> "Pmf":
        return Pmf.from_weights(n, [(v + n + 1) ** 3 for v in range(-n, n + 1)])

    @staticmethod
    def bimodal_uniform(n: int, positive_mass: float) -> "Pmf":
        """Mass `positive_mass` spread uniformly on {1..n}, rest on {-n..0}."""
        if not 0 < positive_mass < 1:
            raise ValueError("positive_mass must lie strictly in (0, 1)")
        p = np.zeros(2 * n + 1)
        p[n + 1:] = positive_mass / n
        p[: n + 1] = (1 - positive_mass) / (n + 1)
        return Pmf(ValueRange(n), p / p.sum())

    # -- text format -------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"n {self.n}"]
        for v in self.range.values():
            lines.append(f"{v} {float(self.p[self.range.offset(v)])!r}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "Pmf":
        lines = text.splitlines()
        if not lines:
            raise ParseError("empty input", 1)
        head = lines[0].split()
        if len(head) != 2 or head[0] != "n":
            raise ParseError(f"expected 'n <n>', got {lines[0]!r}", 1)
        try:
            n = int(head[1])
        except ValueError:
            raise ParseError(f"bad integer {head[1]!r}", 1) from None
        if n < 1:
            raise ParseError(f"n must be >= 1, got {n}", 1)
        body = [ln for ln in lines[1:] if ln.strip()]
        if len(body) != 2 * n + 1:
            raise ParseError(f"expected {2 * n + 1} value lines, got {len(body)}",
                             len(lines))
        p = np.zeros(2 * n + 1)
        for i, ln in enumerate(body):
            parts = ln.split()
            lineno = i + 2
            if len(parts) != 2:
                raise ParseError(f"expected '<value> <probability>', got {ln!r}", lineno)
            try:
                v = int(parts[0])
                prob = float(parts[1])
            except ValueError:
                raise ParseError(f"bad number in {ln!r}", lineno) from None
            if v != i - n:
                raise ParseError(f"expected value {i - n}, got {v}", lineno)
            if not 0 <= prob <= 1:
                raise ParseError(f"probability {prob} outside [0, 1]", lineno)
            p[i] = prob
        try:
            return Pmf(ValueRange(n), p)
        except ValueError as exc:
            raise ParseError(str(exc), len(lines)) from None


@dataclass(frozen=True)
class BinaryParam:
    """Bernoulli parameter for binary-valued trees: q = P(drawing a 0)."""

    q: float

    def __post_init__(self):
        if not 0.0 <= self.q <= 1.0:
            raise ValueError(f"q must lie in [0, 1], got {self.q}")


@dataclass(frozen=True)
class Threshold:
    """Certificate threshold s, valid range {-n+1, ..., n}."""

    s: int

    def validate(self, rng: ValueRange) -> "Threshold":
        if not -rng.n + 1 <= self.s <= rng.n:
            raise InvalidThresholdError(
                f"threshold {self.s} outside [{-rng.n + 1}, {rng.n}]")
        return self

    @property
    def partner(self) -> int:
        """The threshold seen one level down: -s + 1."""
        return -self.s + 1


@dataclass(frozen=True)
class Window:
    """Search window (alpha, beta).  Degenerate windows (alpha >= beta) are
    representable; SCOUT gives them a defined meaning."""

    alpha: int
    beta: int

    @property
    def is_active(self) -> bool:
        return self.alpha < self.beta

    def negated(self) -> "Window":
        return Window(-self.beta, -self.alpha)


@dataclass(frozen=True)
class ScaledVector:
    """Nonnegative vector stored as significands * exp(log_scale).

    After normalization the significands have sup-norm exactly 1, which
    keeps thousands of level iterations inside double range.
    """

    significands: np.ndarray
    log_scale: float = 0.0

    def __post_init__(self):
        sig = np.asarray(self.significands, dtype=float)
        object.__setattr__(self, "significands", sig)
        if sig.ndim != 1:
            raise ValueError("significands must be a 1-d array")
        if np.any(sig < 0):
            raise ValueError("significands must be nonnegative")

    @staticmethod
    def ones(dim: int) -> "ScaledVector":
        return ScaledVector(np.ones(dim), 0.0)

    @property
    def dim(self) -> int:
        return self.significands.shape[0]

    def value(self, i: int) -> float:
        """Represented value of component i (may overflow to inf)."""
        return float(self.significands[i] * math.exp(self.log_scale))

    def log_value(self, i: int) -> float:
        s = self.significands[i]
        return -math.inf if s == 0.0 else math.log(s) + self.log_scale

    def to_log_values(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.log(self.significands) + self.log_scale

    @staticmethod
    def from_log_values(logs: np.ndarray) -> "ScaledVector":
        logs = np.asarray(logs, dtype=float)
        top = logs.max()
        if top == -math.inf:
            raise AllZeroError("all components are zero")
        return ScaledVector(np.exp(logs - top), float(top))


def scaled_renormalize(v: ScaledVector) -> ScaledVector:
    """Rescale so the largest significand is exactly 1; values unchanged."""
    top = v.significands.max() if v.dim else 0.0
    if top <= 0.0:
        raise AllZeroError("all components are zero")
    if top == 1.0:
        return v
    return ScaledVector(v.significands / top, v.log_scale + math.log(top))


# ---------------------------------------------------------------------------
# Dense state indexing for the recursion engine
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TestStates:
    """TEST recursion states (x, t) for the two-threshold cycle {s, -s+1}."""

    s: int


@dataclass(frozen=True)
class WindowStates:
    """ALPHA-BETA / SCOUT states (x, alpha, beta) over all active windows."""


@dataclass(frozen=True)
class BinaryStates:
    """Binary SOLVE states x in {0, 1}."""


@dataclass(frozen=True)
class StateIndex:
    """Bijection between recursion states and dense contiguous indices."""

    kind: object
    range: ValueRange
    states: tuple
    _lookup: dict = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.states)

    def index_of(self, state) -> int:
        return self._lookup[state]

    def state_of(self, i: int):
        return self.states[i]

    def __iter__(self) -> Iterator:
        return iter(self.states)

    def full_window_index(self, x: int) -> int:
        """Index of (x, -n, n); the root marginal is read off these entries."""
        if not isinstance(self.kind, WindowStates):
            raise TypeError("full-window layout only exists for window states")
        return self.index_of((x, -self.range.n, self.range.n))


def index_states(kind, rng: ValueRange) -> StateIndex:
    """Enumerate recursion states densely for the given state kind.

    TEST: (x, t) with t ranging over the two-cycle {s, -s+1}.
    Window (AB/SCOUT): (x, alpha, beta) over all alpha < beta.
    Binary: x in {0, 1}.
    """
    if isinstance(kind, TestStates):
        Threshold(kind.s).validate(rng)
        cycle = (kind.s, -kind.s + 1)
        states = tuple((x, t) for t in cycle for x in rng.values())
    elif isinstance(kind, WindowStates):
        states = tuple(
            (x, a, b)
            for a in rng.values()
            for b in range(a + 1, rng.n + 1)
            for x in rng.values()
        )
    elif isinstance(kind, BinaryStates):
        states = (0, 1)
    else:
        raise TypeError(f"unknown state kind {kind!r}")
    lookup = {st: i for i, st in enumerate(states)}
    return StateIndex(kind, rng, states, lookup)


# ---------------------------------------------------------------------------
# Conditional truncation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TruncatedPmf:
    """Renormalized restriction of a distribution to {lower, ..., n}."""

    lower: int
    upper: int
    p: np.ndarray

    def values(self) -> range:
        return range(self.lower, self.upper + 1)

    def prob(self, v: int) -> float:
        if not self.lower <= v <= self.upper:
            return 0.0
        return float(self.p[v - self.lower])


def truncate(pmf, lower: int) -> TruncatedPmf:
    """Condition on the value being >= lower and renormalize.

    Accepts a Pmf or an already-truncated distribution (truncation is
    idempotent for the same bound).
    """
    if isinstance(pmf, TruncatedPmf):
        lo0, hi, p_full = pmf.lower, pmf.upper, pmf.p
    else:
        lo0, hi, p_full = -pmf.n, pmf.n, pmf.p
    if not lo0 <= lower <= hi:
        raise ValueError(f"lower bound {lower} outside [{lo0}, {hi}]")
    tail = np.asarray(p_full[lower - lo0:], dtype=float)
    mass = tail.sum()
    if mass <= 0.0:
        raise ZeroMassError(f"no probability mass on [{lower}, {hi}]")
    return TruncatedPmf(lower, hi, tail / mass)


def truncation_weights(pmf: Pmf) -> np.ndarray:
    """Matrix W with W[x+n, x'+n] = P(X'=x' | X' >= -x), rows over parent x.

    Entries below the truncation bound are zero.  This is the conditional
    child-value law used throughout the recursion engine.
    """
    n = pmf.n
    V = 2 * n + 1
    W = np.zeros((V, V))
    for x in range(-n, n + 1):
        t = truncate(pmf, -x)
        W[x + n, (-x) + n:] = t.p
    return W
