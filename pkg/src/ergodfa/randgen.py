"""Seeded sampling of uniform random DFA.

The generator is SplitMix64 used in counter mode: the ``i``-th 64-bit output
of the stream with key ``k`` is ``mix64(k + (i + 1) * GOLDEN)`` where
``GOLDEN = 0x9E3779B97F4A7C15`` and ``mix64`` is the SplitMix64 finalizer::

    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z =  z ^ (z >> 31)

(all arithmetic modulo 2**64).  This is exactly the output sequence of the
reference SplitMix64 seeded with ``k``, so any language can reproduce it.
Integers below ``bound`` are taken as ``x % bound`` after rejecting outputs
``x >= 2**64 - (2**64 % bound)``, which removes modulo bias.

A trial key is ``mix64(mix64(master_seed) + (trial_index + 1) * GOLDEN)``.
For a fixed master seed this is injective in the trial index, and for a fixed
trial index it is injective in the master seed.

A random DFA consumes its stream in this order: the ``n * r`` transition
endpoints (row-major, state then symbol), the initial state, then the ``n``
termination bits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .automata import Dfa
from .errors import InvalidSpec

GOLDEN = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1

_G = np.uint64(GOLDEN)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def derive_trial_seed(master_seed: int, trial_index: int) -> int:
    """64-bit key of one trial; stable across versions."""
    return mix64(mix64(master_seed) + (int(trial_index) + 1) * GOLDEN)


class SplitMix64:
    """Counter-mode SplitMix64 stream; ``counter`` is the number of outputs used."""

    def __init__(self, key: int, counter: int = 0):
        self.key = int(key) & MASK64
        self.counter = int(counter)

    def next_u64(self) -> int:
        self.counter += 1
        return mix64(self.key + self.counter * GOLDEN)

    def u64(self, size: int) -> np.ndarray:
        """The next ``size`` raw outputs as a uint64 array."""
        idx = np.arange(self.counter + 1, self.counter + 1 + size, dtype=np.uint64)
        self.counter += size
        return _mix64_array(np.uint64(self.key) + idx * _G)

    def integers(self, bound: int, size: int) -> np.ndarray:
        """``size`` unbiased draws from ``0..bound-1`` (int64 array, bound <= 2**63)."""
        if not 1 <= bound <= 1 << 63:
            raise ValueError("bound must lie in 1..2**63")
        out = np.empty(size, dtype=np.int64)
        if size == 0:
            return out
        span = 1 << 64
        limit = span - span % bound
        b = np.uint64(bound)
        filled = 0
        while filled < size:
            x = self.u64(size - filled)
            if limit != span:
                x = x[x < np.uint64(limit)]
            out[filled:filled + len(x)] = (x % b).astype(np.int64)
            filled += len(x)
        return out

    def integer(self, bound: int) -> int:
        return int(self.integers(bound, 1)[0])


@dataclass(frozen=True)
class SampleSpec:
    n: int
    r: int
    master_seed: int
    trial_index: int = 0

    def __post_init__(self):
        if self.n < 1 or self.r < 1:
            raise InvalidSpec(f"need n >= 1 and r >= 1, got n={self.n}, r={self.r}")
        if self.trial_index < 0:
            raise InvalidSpec("trial_index must be non-negative")

    @property
    def key(self) -> int:
        return derive_trial_seed(self.master_seed, self.trial_index)


def sample_table(spec: SampleSpec) -> tuple[np.ndarray, int, np.ndarray]:
    """Raw draws ``(table, initial, termination)`` of one random DFA."""
    rng = SplitMix64(spec.key)
    table = rng.integers(spec.n, spec.n * spec.r).reshape(spec.n, spec.r)
    initial = rng.integer(spec.n)
    phi = rng.integers(2, spec.n)
    return table, initial, phi


def sample_dfa(spec: SampleSpec) -> Dfa:
    """Uniform random DFA: independent uniform endpoints, initial state and bits."""
    table, initial, phi = sample_table(spec)
    return Dfa.from_table(table.tolist(), phi.tolist(), initial)
