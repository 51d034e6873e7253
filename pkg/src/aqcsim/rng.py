"""Seedable pseudo-random streams for ensemble sampling.

Every problem instance gets its own substream so that ensembles can be
evaluated in any order (or in parallel) while producing bit-identical
coupling draws: substream(seed, index) initializes a splitmix64 generator
with state ``seed XOR index`` and uses its first four outputs as the
xoshiro256++ state, which is the seeding recipe recommended by the
generator's authors.
"""

from __future__ import annotations

import math

_MASK64 = 0xFFFFFFFFFFFFFFFF


def splitmix64(state: int):
    """Advance a splitmix64 state once; return (new_state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class Xoshiro256PP:
    """xoshiro256++ with 53-bit uniform doubles and polar-method Gaussians."""

    __slots__ = ("s0", "s1", "s2", "s3", "_spare")

    def __init__(self, state: tuple[int, int, int, int]):
        self.s0, self.s1, self.s2, self.s3 = (x & _MASK64 for x in state)
        if self.s0 == self.s1 == self.s2 == self.s3 == 0:
            raise ValueError("xoshiro256++ state must not be all zero")
        self._spare: float | None = None

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self.s0, self.s1, self.s2, self.s3
        result = (_rotl((s0 + s3) & _MASK64, 23) + s0) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self.s0, self.s1, self.s2, self.s3 = s0, s1, s2, s3
        return result

    def uniform(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * 2.0 ** -53

    def uniform_symmetric(self, half_width: float) -> float:
        """Uniform double in [-half_width, half_width)."""
        return half_width * (2.0 * self.uniform() - 1.0)

    def normal(self, sigma: float = 1.0) -> float:
        """Gaussian variate via the Marsaglia polar method (pairs cached)."""
        if self._spare is not None:
            z = self._spare
            self._spare = None
            return sigma * z
        while True:
            u = 2.0 * self.uniform() - 1.0
            v = 2.0 * self.uniform() - 1.0
            w = u * u + v * v
            if 0.0 < w < 1.0:
                break
        m = math.sqrt(-2.0 * math.log(w) / w)
        self._spare = v * m
        return sigma * (u * m)


def substream(seed: int, index: int) -> Xoshiro256PP:
    """Independent generator for instance `index` of a run seeded by `seed`."""
    state = (seed ^ index) & _MASK64
    out = []
    for _ in range(4):
        state, z = splitmix64(state)
        out.append(z)
    return Xoshiro256PP(tuple(out))
