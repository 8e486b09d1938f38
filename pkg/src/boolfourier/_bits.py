"""Bit-level helpers shared across the package.

Masks are plain Python ints.  Bit ``i`` of a mask corresponds to variable
``x_{i+1}``; rendered bitstrings are written ``x1 x2 ... xn`` left to right,
so the least-significant bit prints first.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "dot",
    "lex_key",
    "mask_to_string",
    "string_to_mask",
    "lowest_set_bit",
    "highest_set_bit",
    "delete_bit",
    "parity_with_mask",
    "popcounts",
]


def dot(a: int, b: int) -> int:
    """GF(2) inner product of two masks."""
    return (a & b).bit_count() & 1


def lex_key(mask: int, n: int) -> int:
    """Sort key realizing x1-first bitstring order (bit-reversal within n bits)."""
    key = 0
    for i in range(n):
        key = (key << 1) | ((mask >> i) & 1)
    return key


def mask_to_string(mask: int, n: int) -> str:
    """Render a mask as the bitstring x1 x2 ... xn."""
    return "".join("1" if (mask >> i) & 1 else "0" for i in range(n))


def string_to_mask(bits: str) -> int:
    """Parse an x1-first bitstring back into a mask."""
    mask = 0
    for i, ch in enumerate(bits):
        if ch == "1":
            mask |= 1 << i
        elif ch != "0":
            raise ValueError(f"invalid bit {ch!r} at position {i}")
    return mask


def lowest_set_bit(mask: int) -> int:
    """Position of the lowest set bit; mask must be nonzero."""
    return (mask & -mask).bit_length() - 1


def highest_set_bit(mask: int) -> int:
    """Position of the highest set bit; mask must be nonzero."""
    return mask.bit_length() - 1


def delete_bit(mask: int, pos: int) -> int:
    """Remove bit ``pos``, shifting higher bits down one place."""
    low = mask & ((1 << pos) - 1)
    high = mask >> (pos + 1)
    return low | (high << pos)


def parity_with_mask(xs: np.ndarray, mask: int) -> np.ndarray:
    """Vector of <mask, x> over an int64 array of points (values 0/1, uint8)."""
    masked = np.bitwise_and(xs, np.int64(mask))
    return (np.bitwise_count(masked) & 1).astype(np.uint8)


def popcounts(n: int) -> np.ndarray:
    """Popcount of every mask below 2**n as a small-int array."""
    return np.bitwise_count(np.arange(1 << n, dtype=np.int64)).astype(np.int64)
