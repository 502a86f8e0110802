"""
SplitMix64, fixed bit-for-bit so that seeded runs agree across platforms.

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output = z ^ (z >> 31)

Bounded draws use rejection sampling on the full 64-bit output, so every value
below the bound is equally likely.
"""
from typing import Any, List, MutableSequence, TypeVar

from eth_hash.auto import keccak

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX_MULTIPLIER_1 = 0xBF58476D1CE4E5B9
MIX_MULTIPLIER_2 = 0x94D049BB133111EB

T = TypeVar("T")


class SplitMix64:
    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * MIX_MULTIPLIER_1) & MASK64
        z = ((z ^ (z >> 27)) * MIX_MULTIPLIER_2) & MASK64
        return z ^ (z >> 31)

    def next_below(self, bound: int) -> int:
        if bound < 1:
            raise ValueError(f"Bound must be positive, got {bound}.")
        # largest multiple of bound that fits in 64 bits
        limit = (MASK64 + 1) - ((MASK64 + 1) % bound)
        while True:
            value = self.next_u64()
            if value < limit:
                return value % bound

    def next_bit(self) -> int:
        return self.next_u64() >> 63

    def shuffle(self, items: MutableSequence[T]) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.next_below(i + 1)
            items[i], items[j] = items[j], items[i]


def fisher_yates_permutation(size: int, seed: int) -> List[int]:
    order = list(range(size))
    SplitMix64(seed).shuffle(order)
    return order


def derive_subseed(seed: int, *parts: Any) -> int:
    """
    Deterministic child seed: ``seed`` xor the first 8 bytes of keccak256 over the
    ``|``-joined string forms of ``parts``.
    """
    encoded = "|".join(str(part) for part in parts).encode("utf8")
    digest = keccak(encoded)
    return (seed ^ int.from_bytes(digest[:8], "big")) & MASK64
