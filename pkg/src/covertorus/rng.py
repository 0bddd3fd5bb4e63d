"""Counter-based deterministic pseudo-randomness for the verifier.

SplitMix64 streams keyed by (seed, check index, trial index). The exact
derivation, for reproducibility across implementations:

    state_0 = seed mod 2^64
    for each path component p (a non-negative integer, applied in order):
        state_0 = finalize(state_0 xor ((p + 1) * 0x9E3779B97F4A7C15 mod 2^64))
    next(): state += 0x9E3779B97F4A7C15; return finalize(state)

where finalize(z) is the SplitMix64 mixer: z ^= z >> 30; z *= a; z ^= z
>> 27; z *= b; z ^= z >> 31 with a = 0xBF58476D1CE4E5B9 and
b = 0x94D049BB133111EB, all arithmetic mod 2^64. Integers in [lo, hi] are
drawn as lo + next() mod (hi - lo + 1); the modulo bias is irrelevant for
falsification purposes and keeps the recipe trivially portable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, TypeVar

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB

T = TypeVar("T")


def _finalize(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX_A) & _MASK
    z = ((z ^ (z >> 27)) * _MIX_B) & _MASK
    return (z ^ (z >> 31)) & _MASK


class SplitMix64:
    """Tiny counter-based generator; identical seeds yield identical streams."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK
        return _finalize(self.state)

    def randint(self, lo: int, hi: int) -> int:
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.next_u64() % (hi - lo + 1)

    def choice(self, seq: Sequence[T]) -> T:
        return seq[self.randint(0, len(seq) - 1)]

    def chance(self, num: int, den: int) -> bool:
        """True with probability num/den."""
        return self.randint(1, den) <= num

    def fraction(self, max_num: int = 3, max_den: int = 4) -> Fraction:
        """A small nonzero-denominator rational, possibly zero or negative."""
        num = self.randint(-max_num, max_num)
        den = self.randint(1, max_den)
        return Fraction(num, den)


def stream(seed: int, *path: int) -> SplitMix64:
    """Derive an independent generator for a (check, trial, ...) path."""
    state = seed & _MASK
    for p in path:
        state = _finalize(state ^ (((p + 1) * _GOLDEN) & _MASK))
    return SplitMix64(state)
