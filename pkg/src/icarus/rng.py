"""Deterministic 64-bit pseudo-random generator used for all sampling.

The generator is xoshiro256** with its state expanded from a single 64-bit
seed by splitmix64, exactly as recommended by the algorithm authors. Both
algorithms are public domain and widely implemented, so any other language
can reproduce this module's draws bit-for-bit from the same seed. Bounded
draws use unbiased modulo rejection.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1


def splitmix64(state: int):
    """Yield an endless splitmix64 stream starting from ``state``."""
    while True:
        state = (state + 0x9E3779B97F4A7C15) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        yield z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256StarStar:
    """xoshiro256** seeded via splitmix64 expansion of a 64-bit seed."""

    __slots__ = ("_s",)

    def __init__(self, seed: int):
        sm = splitmix64(seed & MASK64)
        self._s = [next(sm), next(sm), next(sm), next(sm)]

    def next_u64(self) -> int:
        s = self._s
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) with rejection of the biased tail."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        if bound == 1:
            return 0
        # largest multiple of bound that fits in 64 bits
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % bound
