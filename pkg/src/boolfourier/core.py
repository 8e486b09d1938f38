"""Exact Fourier analysis of Boolean functions on {0,1}^n.

Representation conventions used throughout the package:

* A function is a truth table of length ``2**n`` with entries in {0, 1}.
  The entry at integer index ``x`` is ``f(x1, ..., xn)`` where ``x1`` is the
  least-significant bit of ``x``.
* A spectrum stores only nonzero Fourier coefficients as integer numerators
  over the implicit denominator ``2**denom_exp``; with the uniform-measure
  transform of a truth table, ``denom_exp == n`` and every numerator is the
  plain character sum, so all arithmetic is exact.
* The +/-1 range view of ``f`` is ``1 - 2*f``; its spectrum is obtained from
  the {0,1} spectrum without leaving integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping

import numpy as np

from ._bits import mask_to_string
from .errors import DimensionMismatch, InvalidEta, NotBoolean

__all__ = [
    "N_MAX",
    "BooleanFunction",
    "Spectrum",
    "ANF",
    "SpectralStats",
    "HypercontractivityResult",
    "wht",
    "inverse_wht",
    "to_pm_spectrum",
    "anf_of",
    "anf_to_function",
    "deg2",
    "spectral_stats",
    "pointwise_product",
    "hypercontractivity_check",
]

# Largest supported number of variables; transform buffers are dense arrays
# of size 2**n, so this is a memory guard, not a numerical one.
N_MAX = 24

_INT64_SAFE = 1 << 62


class BooleanFunction:
    """A total function {0,1}^n -> {0,1} stored as a dense truth table.

    ``n == 0`` is permitted (a single table bit); it is the recursion floor
    for point restrictions.
    """

    __slots__ = ("n", "table")

    def __init__(self, n: int, table):
        if not 0 <= n <= N_MAX:
            raise DimensionMismatch(f"n must be in 0..{N_MAX}, got {n}")
        arr = np.asarray(table, dtype=np.uint8)
        if arr.ndim != 1 or arr.size != 1 << n:
            raise DimensionMismatch(
                f"table must have length {1 << n} for n={n}, got {arr.size}"
            )
        if arr.size and arr.max() > 1:
            raise NotBoolean("table entries must be 0 or 1")
        arr = arr.copy()
        arr.flags.writeable = False
        self.n = n
        self.table = arr

    @classmethod
    def from_int(cls, n: int, bits: int) -> "BooleanFunction":
        """Build from a packed truth table: bit ``x`` of ``bits`` is f(x)."""
        if bits < 0 or bits >> (1 << n):
            raise NotBoolean(f"packed table does not fit in {1 << n} bits")
        if n == 0:
            return cls(0, [bits & 1])
        raw = bits.to_bytes(((1 << n) + 7) // 8, "little")
        arr = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
        return cls(n, arr[: 1 << n])

    def to_int(self) -> int:
        """Packed truth table as an int (bit x = f(x))."""
        packed = np.packbits(self.table, bitorder="little")
        return int.from_bytes(packed.tobytes(), "little")

    def value(self, x: int) -> int:
        return int(self.table[x])

    def ones_count(self) -> int:
        return int(self.table.sum())

    def density(self) -> Fraction:
        return Fraction(self.ones_count(), 1 << self.n)

    def is_constant(self) -> bool:
        return self.ones_count() in (0, 1 << self.n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.table, other.table))

    def __hash__(self) -> int:
        return hash((self.n, self.table.tobytes()))

    def __repr__(self) -> str:
        if self.n <= 4:
            bits = "".join(str(int(b)) for b in self.table)
            return f"BooleanFunction(n={self.n}, table={bits})"
        return f"BooleanFunction(n={self.n}, ones={self.ones_count()})"


class Spectrum:
    """Sparse exact spectrum: nonzero integer numerators over ``2**denom_exp``.

    ``n`` is the ambient dimension (masks live below ``2**n``); folds keep
    ``denom_exp`` fixed while ``n`` shrinks, so numerators stay comparable
    along a folding chain.
    """

    __slots__ = ("n", "denom_exp", "coeffs")

    def __init__(self, n: int, denom_exp: int, coeffs: Mapping[int, int]):
        if not 0 <= n <= N_MAX:
            raise DimensionMismatch(f"n must be in 0..{N_MAX}, got {n}")
        if denom_exp < 0:
            raise DimensionMismatch("denom_exp must be >= 0")
        clean: Dict[int, int] = {}
        top = 1 << n
        for mask, num in coeffs.items():
            if not 0 <= mask < top:
                raise DimensionMismatch(f"mask {mask} out of range for n={n}")
            if num:
                clean[int(mask)] = int(num)
        self.n = n
        self.denom_exp = denom_exp
        self.coeffs = clean

    def l0(self) -> int:
        return len(self.coeffs)

    def l1_num(self) -> int:
        return sum(abs(v) for v in self.coeffs.values())

    def linf_num(self) -> int:
        return max((abs(v) for v in self.coeffs.values()), default=0)

    def value(self, mask: int) -> Fraction:
        return Fraction(self.coeffs.get(mask, 0), 1 << self.denom_exp)

    def support(self) -> list[int]:
        return sorted(self.coeffs)

    def values_equal(self, other: "Spectrum") -> bool:
        """Compare as rational-coefficient maps (denominators may differ)."""
        if self.n != other.n:
            return False
        masks = set(self.coeffs) | set(other.coeffs)
        da, db = self.denom_exp, other.denom_exp
        shift_a = max(0, db - da)
        shift_b = max(0, da - db)
        return all(
            self.coeffs.get(m, 0) << shift_a == other.coeffs.get(m, 0) << shift_b
            for m in masks
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Spectrum):
            return NotImplemented
        return (
            self.n == other.n
            and self.denom_exp == other.denom_exp
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.n, self.denom_exp, tuple(sorted(self.coeffs.items()))))

    def __repr__(self) -> str:
        items = ", ".join(
            f"{mask_to_string(m, self.n)}:{v:+d}" for m, v in sorted(self.coeffs.items())
        )
        return f"Spectrum(n={self.n}, /2^{self.denom_exp}, {{{items}}})"


@dataclass(frozen=True)
class ANF:
    """Algebraic normal form: the set of monomial masks with coefficient 1."""

    n: int
    monomials: frozenset[int]

    @property
    def degree(self) -> int:
        return max((m.bit_count() for m in self.monomials), default=0)


@dataclass(frozen=True)
class SpectralStats:
    l0: int
    l1_num: int
    linf_num: int
    granularity: int


@dataclass(frozen=True)
class HypercontractivityResult:
    eta: float
    lhs: float
    rhs: float
    holds: bool


def _butterfly_sum(table: np.ndarray) -> np.ndarray:
    """In-place Walsh-Hadamard butterfly over a signed integer array."""
    a = table.copy()
    h = 1
    size = a.size
    while h < size:
        b = a.reshape(-1, 2, h)
        top = b[:, 0, :].copy()
        bot = b[:, 1, :].copy()
        b[:, 0, :] = top + bot
        b[:, 1, :] = top - bot
        h <<= 1
    return a


def wht(f: BooleanFunction) -> Spectrum:
    """Walsh-Hadamard transform: f_hat(s) = 2^-n * sum_x f(x) * (-1)^<s,x>.

    Returned numerators are the exact character sums at denom_exp = n.
    """
    # Values are bounded by 2**n <= 2**N_MAX, so int64 is exact.
    sums = _butterfly_sum(f.table.astype(np.int64))
    nz = np.nonzero(sums)[0]
    coeffs = {int(s): int(sums[s]) for s in nz}
    return Spectrum(f.n, f.n, coeffs)


def inverse_wht(spectrum: Spectrum) -> BooleanFunction:
    """Reconstruct the truth table; raises NotBoolean if any value is not 0/1."""
    n, k = spectrum.n, spectrum.denom_exp
    size = 1 << n
    peak = spectrum.l1_num()
    if peak < _INT64_SAFE:
        dense = np.zeros(size, dtype=np.int64)
        for mask, num in spectrum.coeffs.items():
            dense[mask] = num
        vals = _butterfly_sum(dense)
    else:
        dense = np.zeros(size, dtype=object)
        for mask, num in spectrum.coeffs.items():
            dense[mask] = num
        vals = _butterfly_sum(dense)
    unit = 1 << k
    table = np.zeros(size, dtype=np.uint8)
    for x in range(size):
        v = int(vals[x])
        if v == unit:
            table[x] = 1
        elif v != 0:
            raise NotBoolean(f"value {v}/{unit} at x={x} is not 0 or 1")
    return BooleanFunction(n, table)


def to_pm_spectrum(spectrum: Spectrum) -> Spectrum:
    """Spectrum of 1 - 2f from the spectrum of a {0,1}-valued f.

    Same denom_exp; the numerator at s becomes delta(s,0)*2^denom_exp - 2*num(s).
    """
    k = spectrum.denom_exp
    coeffs = {mask: -2 * num for mask, num in spectrum.coeffs.items()}
    coeffs[0] = (1 << k) + coeffs.get(0, 0)
    return Spectrum(spectrum.n, k, coeffs)


def _xor_butterfly(table: np.ndarray) -> np.ndarray:
    a = table.copy()
    h = 1
    size = a.size
    while h < size:
        b = a.reshape(-1, 2, h)
        b[:, 1, :] ^= b[:, 0, :]
        h <<= 1
    return a


def anf_of(f: BooleanFunction) -> ANF:
    """GF(2) Moebius transform: monomial masks with coefficient 1."""
    coeff = _xor_butterfly(f.table)
    return ANF(f.n, frozenset(int(m) for m in np.nonzero(coeff)[0]))


def anf_to_function(anf: ANF) -> BooleanFunction:
    """Inverse Moebius transform (the transform is an involution)."""
    size = 1 << anf.n
    table = np.zeros(size, dtype=np.uint8)
    for m in anf.monomials:
        if not 0 <= m < size:
            raise DimensionMismatch(f"monomial {m} out of range for n={anf.n}")
        table[m] = 1
    return BooleanFunction(anf.n, _xor_butterfly(table))


def deg2(f: BooleanFunction) -> int:
    """GF(2) degree; 0 for constants."""
    return anf_of(f).degree


def spectral_stats(spectrum: Spectrum) -> SpectralStats:
    """Sparsity, l1 / linf numerators, and granularity of a spectrum.

    Granularity is denom_exp minus the largest power of two dividing every
    numerator (0 for the empty spectrum): the least g such that every
    coefficient is an integer multiple of 2^-g.
    """
    values = list(spectrum.coeffs.values())
    if not values:
        return SpectralStats(0, 0, 0, 0)
    g = 0
    for v in values:
        g = math.gcd(g, v)
    twos = (g & -g).bit_length() - 1
    return SpectralStats(
        l0=len(values),
        l1_num=sum(abs(v) for v in values),
        linf_num=max(abs(v) for v in values),
        granularity=max(0, spectrum.denom_exp - twos),
    )


def pointwise_product(a: Spectrum, b: Spectrum) -> Spectrum:
    """Spectrum of the pointwise product: convolution of coefficient maps.

    denom_exp adds; the numerator at s is sum over t of num_a(t)*num_b(s^t).
    """
    if a.n != b.n:
        raise DimensionMismatch(f"spectra on n={a.n} and n={b.n}")
    out: Dict[int, int] = {}
    for s, u in a.coeffs.items():
        for t, v in b.coeffs.items():
            key = s ^ t
            out[key] = out.get(key, 0) + u * v
    return Spectrum(a.n, a.denom_exp + b.denom_exp, out)


def hypercontractivity_check(
    f: BooleanFunction, eta: float, pm: bool = False
) -> HypercontractivityResult:
    """Check ||T_eta f||_2 <= ||f||_{1+eta^2} with tolerance 1e-9.

    T_eta scales the coefficient at s by eta^|s|.  With ``pm=True`` the check
    runs on the +/-1 range view (where the right side is exactly 1).
    """
    if not 0.0 < eta <= 1.0:
        raise InvalidEta(f"eta must be in (0, 1], got {eta}")
    spec = wht(f)
    if pm:
        spec = to_pm_spectrum(spec)
    unit = float(1 << spec.denom_exp)
    lhs_sq = 0.0
    for mask, num in spec.coeffs.items():
        lhs_sq += (num / unit) ** 2 * eta ** (2 * mask.bit_count())
    lhs = math.sqrt(lhs_sq)
    q = 1.0 + eta * eta
    if pm:
        rhs = 1.0
    else:
        rho = f.ones_count() / (1 << f.n)
        rhs = rho ** (1.0 / q)
    return HypercontractivityResult(eta, lhs, rhs, lhs <= rhs + 1e-9)
