"""Deterministic 64-bit PRNG and shuffle used for all game randomness.

The generator is a splitmix64 counter stream: portable, trivially
re-implementable in any language, and fully determined by a 64-bit seed.
Shuffling is Fisher-Yates from the highest index down, with bounded draws
produced by rejection sampling (no modulo bias).  The combination is
versioned as "splitmix64/fisher-yates-v1"; replay files record this tag so
a replay produced elsewhere can be rejected if its deck was shuffled by a
different scheme.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1

RNG_VERSION = "splitmix64/fisher-yates-v1"


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state, returning (new_state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    z = z ^ (z >> 31)
    return state, z


class GameRng:
    """Seedable deterministic random stream for game use."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state, out = splitmix64(self._state)
        return out

    def randrange(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via rejection sampling."""
        if n <= 0:
            raise ValueError("randrange bound must be positive")
        # Largest multiple of n that fits in 64 bits.
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle, high index to low."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randrange(i + 1)
            items[i], items[j] = items[j], items[i]

    def choice(self, items):
        return items[self.randrange(len(items))]
