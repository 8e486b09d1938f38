"""Shared test fixtures: independent oracles and the function corpus.

The oracles recompute everything from definitions in plain Python (direct
double-loop transforms, subset-sum Moebius, point-selection restrictions,
Fraction Gaussian elimination) so package results can be checked against
arithmetic that shares no code with the implementation.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from boolfourier import FamilySpec, generate

# ---------------------------------------------------------------------------
# Independent oracles (no package imports beyond corpus construction).


def parity(x: int) -> int:
    return x.bit_count() & 1


def wht_oracle(table: Sequence[int]) -> Dict[int, int]:
    """Numerators of the 0/1 spectrum over 2^n, by the defining double sum."""
    table = [int(v) for v in table]
    size = len(table)
    n = (size - 1).bit_length()
    assert size == 1 << n
    out = {}
    for s in range(size):
        num = sum(table[x] * (-1) ** parity(s & x) for x in range(size))
        if num:
            out[s] = num
    return out


def pm_spectrum_oracle(table: Sequence[int]) -> Dict[int, int]:
    """Numerators of the (-1)^f spectrum over 2^n."""
    pm = [1 - 2 * int(v) for v in table]
    size = len(table)
    out = {}
    for s in range(size):
        num = sum(pm[x] * (-1) ** parity(s & x) for x in range(size))
        if num:
            out[s] = num
    return out


def anf_oracle(table: Sequence[int]) -> set:
    """Monomial masks by subset-sum Moebius inversion from the definition."""
    table = [int(v) for v in table]
    size = len(table)
    monomials = set()
    for m in range(size):
        acc = 0
        sub = m
        while True:  # iterate all submasks of m
            acc ^= table[sub]
            if sub == 0:
                break
            sub = (sub - 1) & m
        if acc:
            monomials.add(m)
    return monomials


def deg_oracle(table: Sequence[int]) -> int:
    mons = anf_oracle(table)
    return max((m.bit_count() for m in mons), default=0)


def _independent(masks: Sequence[int]) -> bool:
    """GF(2) linear independence by elimination on plain ints."""
    rows = list(masks)
    r = 0
    for bit in range(max(rows).bit_length() if rows else 0):
        piv = next((i for i in range(r, len(rows)) if (rows[i] >> bit) & 1), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and (rows[i] >> bit) & 1:
                rows[i] ^= rows[r]
        r += 1
    return r == len(masks) and all(rows)


def subspace_table(
    table: Sequence[int], constraints: Sequence[Tuple[int, int]]
) -> Optional[List[int]]:
    """Subfunction values on the affine subspace, by point selection.

    Returns None when the constraints are inconsistent.  The parameterization
    is an arbitrary greedy basis of the direction space; only
    parameterization-independent quantities (degree, value multiset,
    constancy) should be compared against it.
    """
    table = [int(v) for v in table]
    size = len(table)
    pts = [
        x
        for x in range(size)
        if all(parity(x & t) == b for t, b in constraints)
    ]
    if not pts:
        return None
    x0 = pts[0]
    directions = sorted({p ^ x0 for p in pts} - {0})
    basis: List[int] = []
    spanned = {0}
    for d in directions:
        if d not in spanned:
            spanned |= {s ^ d for s in spanned}
            basis.append(d)
    m = len(basis)
    out = []
    for u in range(1 << m):
        x = x0
        for i in range(m):
            if (u >> i) & 1:
                x ^= basis[i]
        out.append(table[x])
    return out


def rank_oracle(table: Sequence[int], max_codim: int = 4) -> Optional[int]:
    """Minimum codimension with a degree drop, by exhaustive brute force."""
    table = [int(v) for v in table]
    size = len(table)
    n = (size - 1).bit_length()
    d = deg_oracle(table)
    for k in range(1, min(max_codim, n) + 1):
        for masks in itertools.combinations(range(1, size), k):
            if not _independent(masks):
                continue
            for bits in itertools.product((0, 1), repeat=k):
                sub = subspace_table(table, list(zip(masks, bits)))
                if sub is not None and deg_oracle(sub) < d:
                    return k
    return None


def matrix_rank_oracle(matrix: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals by Fraction Gaussian elimination."""
    m = [[Fraction(v) for v in row] for row in matrix]
    if not m:
        return 0
    rows, cols = len(m), len(m[0])
    rank = 0
    for col in range(cols):
        piv = next((i for i in range(rank, rows) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rows):
            if i != rank and m[i][col]:
                factor = m[i][col] / m[rank][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def xor_matrix_oracle(table: Sequence[int]) -> List[List[int]]:
    table = [int(v) for v in table]
    size = len(table)
    return [[table[x ^ y] for y in range(size)] for x in range(size)]


# ---------------------------------------------------------------------------
# Corpus.


def _symmetric_values(n: int, rule: str) -> Tuple[int, ...]:
    if rule == "threshold":
        return tuple(1 if w >= (n + 1) // 2 else 0 for w in range(n + 1))
    if rule == "mod3":
        return tuple(1 if w % 3 == 0 else 0 for w in range(n + 1))
    if rule == "exact":
        return tuple(1 if w == n // 2 else 0 for w in range(n + 1))
    raise ValueError(rule)


def family_corpus(max_n: int = 10) -> List[Tuple[str, object]]:
    """(label, BooleanFunction) pairs spanning every constructor family.

    Dense families stop at n = 7 to keep exhaustive checks quick; parity is
    carried to max_n and bent_ip to k = 8.
    """
    entries: List[Tuple[str, object]] = []

    def add(kind: str, params: dict, label: str) -> None:
        entries.append((label, generate(FamilySpec(kind, params))))

    for k in (2, 4, 6, 8):
        if k <= max_n:
            add("bent_ip", {"k": k}, f"bent_ip(k={k})")
    for n in range(1, min(7, max_n) + 1):
        add("and", {"n": n}, f"and(n={n})")
        add("or", {"n": n}, f"or(n={n})")
    for n in range(1, max_n + 1):
        add("parity", {"n": n}, f"parity(n={n})")
    for n in (1, 3, 5, 7):
        if n <= max_n:
            add("majority", {"n": n}, f"majority(n={n})")
    for n in range(2, min(8, max_n) + 1):
        for rule in ("threshold", "mod3"):
            add(
                "symmetric",
                {"values": _symmetric_values(n, rule)},
                f"symmetric(n={n},{rule})",
            )
    for n in (3, 4, 5, 6):
        if n <= max_n:
            add(
                "symmetric",
                {"values": _symmetric_values(n, "exact")},
                f"symmetric(n={n},exact)",
            )
    for n in range(2, min(8, max_n) + 1):
        add(
            "affine_indicator",
            {"n": n, "constraints": ((1, 1),)},
            f"affine_indicator(n={n},x1=1)",
        )
        add(
            "affine_indicator",
            {"n": n, "constraints": ((3, 0), (2, 1))},
            f"affine_indicator(n={n},two)",
        )
    return entries


def random_corpus(count: int = 200) -> List[Tuple[str, object]]:
    """Seeded random polynomials cycling n in 3..6 and degree in 2..4."""
    entries = []
    for i in range(count):
        n = 3 + i % 4
        d = min(2 + i % 3, n)
        seed = i + 1
        f = generate(FamilySpec("random_poly", {"n": n, "d": d, "seed": seed}))
        entries.append((f"random_poly(n={n},d={d},seed={seed})", f))
    return entries


def full_corpus(max_n: int = 10, random_count: int = 200) -> List[Tuple[str, object]]:
    return family_corpus(max_n) + random_corpus(random_count)
