"""Pinned pseudorandom generator for reproducible puzzle generation.

splitmix64: a 64-bit state stepped by the golden-ratio increment and run
through two xor-multiply finalizers per draw.  The algorithm is frozen so
that a (seed, attempt) pair produces the same stream on every platform and
in every future version of this package; changing it means bumping the
generator version baked into puzzle ids.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform-ish draw in [0, bound) via modulo reduction.

        The modulo bias is at most bound/2^64, irrelevant for puzzle
        generation, and keeps the draw a single deterministic step.
        """
        if bound < 1:
            raise ValueError(f"bound must be >= 1, got {bound}")
        return self.next_u64() % bound

    def weighted_index(self, weights) -> int:
        """Index drawn proportionally to non-negative integer weights."""
        total = 0
        for w in weights:
            if w < 0:
                raise ValueError("weights must be non-negative")
            total += w
        if total == 0:
            raise ValueError("weights must not all be zero")
        r = self.below(total)
        acc = 0
        for i, w in enumerate(weights):
            acc += w
            if r < acc:
                return i
        raise AssertionError("unreachable")


def stream_for(seed: int, attempt: int) -> SplitMix64:
    """Independent stream for one generation attempt of one seed."""
    return SplitMix64((seed + _GOLDEN * (attempt + 1)) & _MASK64)
