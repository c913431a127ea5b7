"""Total Steenrod square on Z/2[t]/(t^N) and the Wu-class conversion.

Sq is the ring endomorphism determined by Sq(t) = t + t^2, so on monomials
Sq(t^k) = t^k (1+t)^k, i.e. Sq^i(t^k) = C(k, i) t^(k+i).
"""

from __future__ import annotations

from dataclasses import dataclass

from .series import NonUnitError, TruncatedSeries, TruncationError, spread_bits, split_even_odd

__all__ = ["SteenrodOperator", "sq_inverse", "sq_total", "wu_from_sw"]

# Past this truncation the quadratic degree-by-degree kernels hand over to
# the even/odd splitting, which is O(N log N) bit work.
_DIRECT_MAX = 4096


def _mask(n: int) -> int:
    return (1 << n) - 1


def _sq_direct(g: int, n: int) -> int:
    mask = _mask(n)
    out, u_k = 0, 1  # u_k = (t + t^2)^k
    for k in range(min(n, g.bit_length())):
        if (g >> k) & 1:
            out ^= u_k
        u_k = ((u_k << 1) ^ (u_k << 2)) & mask
    return out


def _sq_inverse_direct(f: int, n: int) -> int:
    # forward substitution: Sq is unitriangular with respect to degree
    mask = _mask(n)
    out, rest, u_k = 0, f, 1
    for k in range(n):
        if not rest:
            break
        if (rest >> k) & 1:
            out |= 1 << k
            rest ^= u_k
        u_k = ((u_k << 1) ^ (u_k << 2)) & mask
    return out


# With g = A(t)^2 + t B(t)^2 and u = t + t^2:
#   Sq(g) = (A(u) + t B(u))^2 + t B(u)^2,
# so both Sq and its inverse reduce to two half-size problems plus bit shuffles.

def _sq_split(g: int, n: int) -> int:
    if n <= _DIRECT_MAX:
        return _sq_direct(g, n)
    hi, lo = (n + 1) // 2, n // 2
    a, b = split_even_odd(g, n)
    b_u = _sq_split(b, lo)
    a_u = _sq_split(a, hi)
    p = a_u ^ ((b_u << 1) & _mask(hi))
    return (spread_bits(p) | (spread_bits(b_u) << 1)) & _mask(n)


def _sq_inverse_split(f: int, n: int) -> int:
    if n <= _DIRECT_MAX:
        return _sq_inverse_direct(f, n)
    hi, lo = (n + 1) // 2, n // 2
    p, q = split_even_odd(f, n)
    b = _sq_inverse_split(q, lo)
    a = _sq_inverse_split(p ^ ((q << 1) & _mask(hi)), hi)
    return (spread_bits(a) | (spread_bits(b) << 1)) & _mask(n)


def sq_total(f: TruncatedSeries) -> TruncatedSeries:
    """Total Steenrod square Sq = sum_i Sq^i applied to ``f``."""
    return TruncatedSeries(f.truncation, _sq_split(f.bits, f.truncation))


def sq_inverse(f: TruncatedSeries) -> TruncatedSeries:
    """The unique g with sq_total(g) == f."""
    return TruncatedSeries(f.truncation, _sq_inverse_split(f.bits, f.truncation))


def wu_from_sw(w: TruncatedSeries) -> TruncatedSeries:
    """Total Wu class v of a bundle with total Stiefel-Whitney class ``w`` (Sq v = w)."""
    if not w.is_unit():
        raise NonUnitError(f"total Stiefel-Whitney class must start with 1, got {w}")
    return sq_inverse(w)


@dataclass(frozen=True)
class SteenrodOperator:
    """Sq bound to one truncation; refuses series from any other ring."""

    truncation: int

    def _check(self, f: TruncatedSeries) -> None:
        if f.truncation != self.truncation:
            raise TruncationError(
                f"operator acts on t^{self.truncation}-truncated series, got t^{f.truncation}"
            )

    def __call__(self, f: TruncatedSeries) -> TruncatedSeries:
        self._check(f)
        return sq_total(f)

    def inverse(self, f: TruncatedSeries) -> TruncatedSeries:
        self._check(f)
        return sq_inverse(f)
