"""Deterministic two-party protocols for XOR functions F(x, y) = f(x xor y).

A parity decision tree for f turns into a protocol directly: for each node
the two sides announce <mask, x> and <mask, y> (two bits per round) and both
follow the branch of the XOR, which equals <mask, x xor y>.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ._bits import dot
from .core import BooleanFunction
from .errors import DimensionMismatch, TooLarge
from .pdt import Pdt, PdtNode

__all__ = [
    "xor_matrix",
    "matrix_rank_exact",
    "Round",
    "Transcript",
    "simulate_protocol",
    "verify_protocol",
    "ProtocolReport",
]

_XOR_MATRIX_N_LIMIT = 10
_SWEEP_N_LIMIT = 8


def xor_matrix(f: BooleanFunction) -> np.ndarray:
    """The 2^n x 2^n integer matrix M[x][y] = f(x xor y)."""
    if f.n > _XOR_MATRIX_N_LIMIT:
        raise TooLarge(f"xor_matrix supports n <= {_XOR_MATRIX_N_LIMIT}, got {f.n}")
    size = 1 << f.n
    idx = np.arange(size, dtype=np.int64)
    return f.table[idx[:, None] ^ idx[None, :]].astype(np.int64)


def matrix_rank_exact(matrix) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination.

    Entries are arbitrary-precision integers throughout; every division is
    exact by the Bareiss identity, so no pivoting policy or tolerance enters.
    Columns without a pivot are skipped; elimination stops as soon as the
    remaining block is zero.
    """
    a = np.array(matrix, dtype=object)
    if a.ndim != 2:
        raise DimensionMismatch("matrix_rank_exact expects a 2-d matrix")
    rows, cols = a.shape
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        piv = None
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        p = a[r, c]
        if r + 1 < rows and c + 1 < cols:
            block = a[r + 1 :, c + 1 :]
            a[r + 1 :, c + 1 :] = (
                block * p - np.outer(a[r + 1 :, c], a[r, c + 1 :])
            ) // prev
        a[r + 1 :, c] = 0
        prev = p
        r += 1
    return r


@dataclass(frozen=True)
class Round:
    mask: int
    alice_bit: int
    bob_bit: int


@dataclass(frozen=True)
class Transcript:
    rounds: Tuple[Round, ...]
    output: int

    @property
    def cost_bits(self) -> int:
        return 2 * len(self.rounds)


@dataclass(frozen=True)
class ProtocolReport:
    correct: bool
    max_cost: int


def simulate_protocol(tree: Pdt, x: int, y: int) -> Transcript:
    """Run the two-bit-per-round protocol derived from a parity tree.

    Each round both parties announce their side's parity of the current
    query mask; the shared branch is the XOR, so the walk tracks
    pdt_eval(tree, x xor y) exactly.
    """
    top = 1 << tree.n
    if not (0 <= x < top and 0 <= y < top):
        raise DimensionMismatch(f"inputs out of range for n={tree.n}")
    rounds: List[Round] = []
    node = tree.root
    while isinstance(node, PdtNode):
        a = dot(node.mask, x)
        b = dot(node.mask, y)
        rounds.append(Round(node.mask, a, b))
        node = node.child1 if a ^ b else node.child0
    return Transcript(tuple(rounds), node.value)


def verify_protocol(tree: Pdt, f: BooleanFunction) -> ProtocolReport:
    """Exhaustively check the protocol against f(x xor y) over all pairs."""
    if tree.n != f.n:
        raise DimensionMismatch(f"tree on {tree.n} variables, f on {f.n}")
    if f.n > _SWEEP_N_LIMIT:
        raise TooLarge(f"exhaustive pair sweep supports n <= {_SWEEP_N_LIMIT}")
    size = 1 << f.n
    correct = True
    for x in range(size):
        for y in range(size):
            if simulate_protocol(tree, x, y).output != f.value(x ^ y):
                correct = False
                break
        if not correct:
            break
    return ProtocolReport(correct=correct, max_cost=2 * tree.depth())
