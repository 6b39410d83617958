"""Deterministic pseudo-random number generation.

Every stochastic component in this library draws from a SplitMix64 stream,
so fitted models are reproducible bit for bit from integer seeds on any
platform. Nothing here is cryptographic.
"""

from __future__ import annotations

import math

import numpy as np

_MASK64 = (1 << 64) - 1

#: Golden-ratio increment used by SplitMix64 state advancement.
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

_MIX_MUL_1 = 0xBF58476D1CE4E5B9
_MIX_MUL_2 = 0x94D049BB133111EB


def mix64(value: int) -> int:
    """Apply the SplitMix64 output finalizer to a 64-bit value."""
    z = value & _MASK64
    z = ((z ^ (z >> 30)) * _MIX_MUL_1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX_MUL_2) & _MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, *path: int) -> int:
    """Derive a child seed from a root seed and an integer path.

    Each path component folds into an accumulator through mix64, so
    (seed, 1, 2) and (seed, 2, 1) land in unrelated streams. Negative
    components are taken modulo 2**64.
    """
    acc = (seed + GOLDEN_GAMMA) & _MASK64
    for part in path:
        acc = mix64(acc ^ mix64((part + GOLDEN_GAMMA) & _MASK64))
    return acc


class SplitMix64:
    """SplitMix64 generator.

    The state advances by GOLDEN_GAMMA per draw and outputs pass through a
    xor-shift-multiply finalizer. Bounded draws use modulo reduction; the
    bias is below 2**-40 for every bound this library needs.
    """

    __slots__ = ("state", "_spare_normal")

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK64
        self._spare_normal: float | None = None

    def next_u64(self) -> int:
        """Return the next output as an unsigned 64-bit integer."""
        self.state = (self.state + GOLDEN_GAMMA) & _MASK64
        return mix64(self.state)

    def next_unit(self) -> float:
        """Return a float in [0, 1) with 53 random mantissa bits."""
        return (self.next_u64() >> 11) * 2.0**-53

    def next_below(self, bound: int) -> int:
        """Return an integer in [0, bound) by modulo reduction."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        return self.next_u64() % bound

    def permutation(self, n: int) -> np.ndarray:
        """Return a uniform permutation of range(n) as an int64 array.

        Fisher-Yates from the high end: for i = n-1 .. 1 swap position i
        with position next_below(i + 1).
        """
        if n < 0:
            raise ValueError(f"n must be non-negative, got {n}")
        out = np.arange(n, dtype=np.int64)
        for i in range(n - 1, 0, -1):
            j = self.next_below(i + 1)
            out[i], out[j] = out[j], out[i]
        return out

    def standard_normal(self) -> float:
        """Return one N(0, 1) draw via the polar Box-Muller method.

        Each accepted (u, v) pair yields two deviates; the second is cached
        and returned by the following call without consuming the stream.
        """
        if self._spare_normal is not None:
            value = self._spare_normal
            self._spare_normal = None
            return value
        while True:
            u = 2.0 * self.next_unit() - 1.0
            v = 2.0 * self.next_unit() - 1.0
            s = u * u + v * v
            if 0.0 < s < 1.0:
                break
        factor = math.sqrt(-2.0 * math.log(s) / s)
        self._spare_normal = v * factor
        return u * factor
