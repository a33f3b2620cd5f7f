"""Deterministic, splittable randomness built on SplitMix64.

The generator is fixed on purpose: tree content must be bit-identical
across platforms and independent of traversal order, so every node of a
tree draws from its own substream keyed by (seed, preorder index).  The
same finalizer is exposed in vectorized form for batch generation; both
paths produce identical draws.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15

# Substream key for a root-value draw; preorder indices never get near it.
ROOT_DRAW_INDEX = (1 << 64) - 2


def _finalize(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return (z ^ (z >> 31)) & MASK64


def mix64(seed: int, index: int) -> int:
    """Key of the substream derived from (seed, index)."""
    return _finalize((seed + (index + 1) * GOLDEN) & MASK64)


@dataclass
class RngStream:
    """SplitMix64 stream: state advances by the golden-ratio increment and
    each output is the finalizer applied to the new state.

    Identical seed gives an identical sample sequence on every platform;
    `derive` splits off an independent substream.
    """

    seed: int
    position: int = 0
    algorithm: str = "splitmix64"

    def next_u64(self) -> int:
        self.position += 1
        return _finalize((self.seed + self.position * GOLDEN) & MASK64)

    def uniform(self) -> float:
        """Uniform in [0, 1)."""
        return self.next_u64() / 2.0 ** 64

    def randint(self, k: int) -> int:
        """Uniform integer in {0, ..., k-1}."""
        return min(int(self.uniform() * k), k - 1)

    def derive(self, index: int) -> "RngStream":
        return RngStream(mix64(self.seed, index))


def node_stream(seed: int, preorder_index: int) -> RngStream:
    """Substream that drives the child sampling of one tree node."""
    return RngStream(mix64(seed, preorder_index))


# -- vectorized counterparts (numpy uint64, wrapping arithmetic) ------------

_U = np.uint64


def _finalize_v(z: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        z = (z ^ (z >> _U(30))) * _U(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> _U(27))) * _U(0x94D049BB133111EB)
        return z ^ (z >> _U(31))


def mix64_v(seeds, indices) -> np.ndarray:
    """Vectorized mix64 over arrays of seeds and/or indices."""
    with np.errstate(over="ignore"):
        s = np.asarray(seeds, dtype=_U)
        i = np.asarray(indices, dtype=_U)
        return _finalize_v(s + (i + _U(1)) * _U(GOLDEN))


def uniforms_v(keys: np.ndarray, position) -> np.ndarray:
    """position-th uniform (1-based) of the streams with the given keys."""
    with np.errstate(over="ignore"):
        p = np.asarray(position, dtype=_U)
        return _finalize_v(keys + p * _U(GOLDEN)) / 2.0 ** 64
