"""Truncated power series over GF(2).

Elements of Z/2[t]/(t^N) are stored as Python integers: bit k holds the
coefficient of t^k.  Every value carries its truncation N, and operations
between values of different truncation are refused rather than silently
re-truncated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "NonUnitError",
    "TruncatedSeries",
    "TruncationError",
    "add",
    "binomial_parity",
    "invert",
    "mul",
    "parse_series",
    "power",
]

# Below these sizes the word-level shift/xor kernels beat the FFT and Newton paths.
_FFT_MIN_TRUNCATION = 4096
_FFT_MIN_WEIGHT = 256
_NEWTON_MIN_TRUNCATION = 4096


class TruncationError(ValueError):
    """Operands live in rings with different truncation orders."""


class NonUnitError(ValueError):
    """A series with zero constant term has no multiplicative inverse."""


def _mask(n: int) -> int:
    return (1 << n) - 1


def _to_bit_array(x: int, n: int) -> np.ndarray:
    raw = np.frombuffer(x.to_bytes((n + 7) // 8 or 1, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n]


def _from_bit_array(bits: np.ndarray) -> int:
    return int.from_bytes(np.packbits(bits.astype(np.uint8), bitorder="little").tobytes(), "little")


_SPREAD_BYTE = [sum(((b >> i) & 1) << (2 * i) for i in range(8)) for b in range(256)]


def spread_bits(x: int) -> int:
    """Move bit i of ``x`` to bit 2i (the Frobenius map f -> f^2 on coefficients)."""
    if x < 1 << 64:
        out, shift = 0, 0
        while x:
            out |= _SPREAD_BYTE[x & 0xFF] << shift
            x >>= 8
            shift += 16
        return out
    bits = _to_bit_array(x, x.bit_length())
    out = np.zeros(2 * bits.size, dtype=np.uint8)
    out[::2] = bits
    return _from_bit_array(out)


def split_even_odd(x: int, n: int) -> tuple[int, int]:
    """Return (A, B) with x = A(t^2) + t*B(t^2), reading only the low ``n`` bits."""
    bits = _to_bit_array(x, n)
    return _from_bit_array(bits[::2]), _from_bit_array(bits[1::2])


def _clmul_shift_xor(a: int, b: int, n: int) -> int:
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    while a:
        low = a & -a
        out ^= b << (low.bit_length() - 1)
        a ^= low
    return out & _mask(n)


def _clmul_fft(a: int, b: int, n: int) -> int:
    fa = _to_bit_array(a, n).astype(np.float64)
    fb = _to_bit_array(b, n).astype(np.float64)
    size = 1 << (2 * n - 1).bit_length()
    conv = np.fft.irfft(np.fft.rfft(fa, size) * np.fft.rfft(fb, size), size)[:n]
    rounded = np.rint(conv)
    # exactness guard: counts are at most n, far inside float64 precision
    if np.max(np.abs(conv - rounded), initial=0.0) >= 0.25:
        raise ArithmeticError("FFT convolution lost exactness")
    return _from_bit_array(rounded.astype(np.int64) & 1)


def clmul(a: int, b: int, n: int) -> int:
    """Carry-less product of two bit-packed polynomials, truncated to ``n`` bits."""
    a &= _mask(n)
    b &= _mask(n)
    if not a or not b:
        return 0
    if n >= _FFT_MIN_TRUNCATION and min(a.bit_count(), b.bit_count()) >= _FFT_MIN_WEIGHT:
        return _clmul_fft(a, b, n)
    return _clmul_shift_xor(a, b, n)


def _invert_recurrence(f: int, n: int) -> int:
    # g_k = sum_{j=1..k} f_j g_{k-j}; rev keeps g reversed so one AND + popcount gives g_k.
    g, rev, gk = 1, 0, 1
    for k in range(1, n):
        rev = (rev | gk) << 1
        gk = (f & rev).bit_count() & 1
        if gk:
            g |= 1 << k
    return g


def _invert_newton(f: int, n: int) -> int:
    # In characteristic 2 the Newton step g <- g(2 - fg) collapses to g <- f g^2.
    g, prec = 1, 1
    while prec < n:
        prec = min(2 * prec, n)
        g = clmul(f, spread_bits(g), prec)
    return g


@dataclass(frozen=True, slots=True)
class TruncatedSeries:
    """An element of Z/2[t]/(t^N).

    ``bits`` is the packed coefficient word; use :attr:`coefficients` or
    indexing for the coefficient sequence.
    """

    truncation: int
    bits: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.truncation, int) or self.truncation < 1:
            raise ValueError(f"truncation must be a positive integer, got {self.truncation!r}")
        if self.bits < 0 or self.bits >> self.truncation:
            raise ValueError(f"coefficient word has terms at or beyond t^{self.truncation}")

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls, truncation: int) -> TruncatedSeries:
        return cls(truncation, 0)

    @classmethod
    def one(cls, truncation: int) -> TruncatedSeries:
        return cls(truncation, 1)

    @classmethod
    def monomial(cls, degree: int, truncation: int) -> TruncatedSeries:
        """t^degree, which is zero when degree >= truncation."""
        if degree < 0:
            raise ValueError("negative degree")
        return cls(truncation, (1 << degree) & _mask(truncation))

    @classmethod
    def from_coefficients(cls, coefficients: Sequence[int]) -> TruncatedSeries:
        """Build from a full coefficient list; its length is the truncation."""
        bits = 0
        for k, c in enumerate(coefficients):
            if c not in (0, 1):
                raise ValueError(f"coefficient {c!r} at t^{k} is not a parity")
            bits |= c << k
        return cls(len(coefficients), bits)

    @classmethod
    def from_exponents(cls, exponents: Iterable[int], truncation: int) -> TruncatedSeries:
        """Sum of t^e over ``exponents`` (repeats cancel in pairs)."""
        bits = 0
        for e in exponents:
            if not 0 <= e < truncation:
                raise ValueError(f"t^{e} is outside Z/2[t]/(t^{truncation})")
            bits ^= 1 << e
        return cls(truncation, bits)

    # -- inspection ---------------------------------------------------------

    @property
    def coefficients(self) -> tuple[int, ...]:
        return tuple((self.bits >> k) & 1 for k in range(self.truncation))

    def __getitem__(self, k: int) -> int:
        if not 0 <= k < self.truncation:
            raise IndexError(f"degree {k} outside [0, {self.truncation})")
        return (self.bits >> k) & 1

    def __len__(self) -> int:
        return self.truncation

    def exponents(self) -> list[int]:
        """Degrees with a nonzero coefficient, ascending."""
        out, x = [], self.bits
        while x:
            low = x & -x
            out.append(low.bit_length() - 1)
            x ^= low
        return out

    def is_zero(self) -> bool:
        return self.bits == 0

    def is_unit(self) -> bool:
        return bool(self.bits & 1)

    def degree(self) -> int:
        """Highest nonzero degree; -1 for the zero series."""
        return self.bits.bit_length() - 1

    def __bool__(self) -> bool:
        return self.bits != 0

    def __str__(self) -> str:
        return format_series(self)

    def __repr__(self) -> str:
        return f"TruncatedSeries({format_series(self)!r}, N={self.truncation})"

    # -- ring operations ----------------------------------------------------

    def _check(self, other: object) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if other.truncation != self.truncation:
            raise TruncationError(
                f"truncation mismatch: t^{self.truncation} vs t^{other.truncation}"
            )
        return other

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        other = self._check(other)
        return TruncatedSeries(self.truncation, self.bits ^ other.bits)

    __sub__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return self

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        other = self._check(other)
        return TruncatedSeries(self.truncation, clmul(self.bits, other.bits, self.truncation))

    def __pow__(self, k: int) -> TruncatedSeries:
        return power(self, k)

    def square(self) -> TruncatedSeries:
        return TruncatedSeries(self.truncation, spread_bits(self.bits) & _mask(self.truncation))

    def inverse(self) -> TruncatedSeries:
        return invert(self)


def add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f + g


def mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    return f * g


def power(f: TruncatedSeries, k: int) -> TruncatedSeries:
    """f^k by square-and-multiply; f^0 = 1."""
    if k < 0:
        raise ValueError("negative exponent; use invert() for units")
    n = f.truncation
    result = 1
    for bit in bin(k)[2:]:
        result = spread_bits(result) & _mask(n)
        if bit == "1":
            result = clmul(result, f.bits, n)
    return TruncatedSeries(n, result)


def invert(f: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a unit in Z/2[t]/(t^N)."""
    if not f.is_unit():
        raise NonUnitError(f"{f} has zero constant term")
    n = f.truncation
    if n >= _NEWTON_MIN_TRUNCATION:
        return TruncatedSeries(n, _invert_newton(f.bits, n))
    return TruncatedSeries(n, _invert_recurrence(f.bits, n))


def binomial_parity(n: int, k: int) -> int:
    """C(n, k) mod 2 via Lucas: odd iff the binary digits of k are a subset of those of n."""
    if n < 0 or k < 0:
        raise ValueError("binomial_parity takes nonnegative arguments")
    return int(k & n == k)


def format_series(f: TruncatedSeries) -> str:
    terms = []
    for e in f.exponents():
        terms.append("1" if e == 0 else "t" if e == 1 else f"t^{e}")
    return " + ".join(terms) if terms else "0"


_TERM = re.compile(r"^(?:1|t(?:\^(\d+))?)$")


def parse_series(text: str, truncation: int) -> TruncatedSeries:
    """Parse ``"1 + t^2 + t^4"`` into Z/2[t]/(t^truncation).

    Terms of degree >= truncation are rejected, not dropped.
    """
    text = text.strip()
    if text == "0":
        return TruncatedSeries.zero(truncation)
    exponents = []
    for raw in text.split("+"):
        term = raw.replace(" ", "")
        m = _TERM.match(term)
        if not m:
            raise ValueError(f"cannot parse term {raw!r}")
        if term == "1":
            exponents.append(0)
        else:
            exponents.append(int(m.group(1)) if m.group(1) else 1)
    return TruncatedSeries.from_exponents(exponents, truncation)
