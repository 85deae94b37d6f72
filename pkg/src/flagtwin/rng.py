"""Deterministic random bits for every sampler in the package.

The generator is SplitMix64: a counter-based 64-bit generator whose i-th
output is a pure function of (seed, i).  That gives three properties the
samplers rely on:

* bit-identical streams across platforms and Python versions,
* O(1) skipping (the edge samplers consume fixed-length draw blocks), and
* a numpy-vectorized block generator that matches the scalar stream exactly.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def bernoulli_threshold(p: float) -> int:
    """Inclusion threshold for a probability: draw < threshold <=> success.

    Probabilities are quantized to multiples of 2**-64; p=0 and p=1 are exact.
    """
    if p <= 0.0:
        return 0
    if p >= 1.0:
        return 1 << 64
    return int(p * 2.0**64)


class Rng:
    """SplitMix64 stream with scalar and vectorized access."""

    __slots__ = ("_counter", "_seed")

    def __init__(self, seed: int):
        self._seed = seed & MASK64
        self._counter = 0

    def u64(self) -> int:
        self._counter += 1
        return _mix((self._seed + self._counter * _GOLDEN) & MASK64)

    def u64_block(self, count: int) -> np.ndarray:
        """Next `count` outputs as uint64, identical to `count` u64() calls."""
        if count < 0:
            raise ValueError("count must be nonnegative")
        idx = np.arange(self._counter + 1, self._counter + count + 1, dtype=np.uint64)
        self._counter += count
        z = (np.uint64(self._seed) + idx * np.uint64(_GOLDEN)) & np.uint64(MASK64)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        return z ^ (z >> np.uint64(31))

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection (unbiased)."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = ((1 << 64) // n) * n
        while True:
            draw = self.u64()
            if draw < limit:
                return draw % n

    def random(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.u64() >> 11) * 2.0**-53

    def bernoulli(self, p: float) -> bool:
        return self.u64() < bernoulli_threshold(p)

    def skip(self, count: int) -> None:
        self._counter += count


def derive_seed(seed: int, tag: str) -> int:
    """Stable sub-seed for an independent stream (e.g. per-trial embeddings)."""
    h = seed & MASK64
    for byte in tag.encode("utf-8"):
        h = _mix((h ^ byte) & MASK64)
    return h
