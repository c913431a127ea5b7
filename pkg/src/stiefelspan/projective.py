"""Characteristic classes of real projective space P^(n-1) and the parity chi(n).

Cohomology of P^(n-1) is Z/2[t]/(t^n); the tangent bundle is stably n copies
of the Hopf line bundle xi, whose total Stiefel-Whitney class is 1 + t.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from .series import TruncatedSeries, binomial_parity, invert, power
from .steenrod import sq_total, wu_from_sw

__all__ = [
    "ChiResult",
    "ProjSpaceClasses",
    "RouteDisagreementError",
    "chi",
    "condition_s",
    "projective_space_classes",
    "radon_hurwitz",
    "span_projective",
    "sw_hopf_multiple",
    "wu_tangent_closed_form",
]

log = logging.getLogger(__name__)


class RouteDisagreementError(RuntimeError):
    """Independent computations of the same invariant disagree (an implementation defect)."""


def _require_n(n: int, least: int = 2) -> None:
    if not isinstance(n, int) or n < least:
        raise ValueError(f"n must be an integer >= {least}, got {n!r}")


def _one_plus_t(n: int) -> TruncatedSeries:
    return TruncatedSeries(n, 0b11 & ((1 << n) - 1))


def sw_hopf_multiple(m: int, n: int) -> TruncatedSeries:
    """Total Stiefel-Whitney class of m*xi over P^(n-1): (1+t)^m mod t^n."""
    _require_n(n)
    if m < 0:
        raise ValueError("bundle multiple must be nonnegative")
    return power(_one_plus_t(n), m)


def wu_tangent_closed_form(n: int) -> TruncatedSeries:
    """v(tau) of P^(n-1) as sum_i C(n-i-1, i) t^i over 0 <= i <= (n-1)/2."""
    _require_n(n)
    bits = 0
    for i in range((n - 1) // 2 + 1):
        if binomial_parity(n - i - 1, i):
            bits |= 1 << i
    return TruncatedSeries(n, bits)


@dataclass(frozen=True)
class ProjSpaceClasses:
    n: int
    sw_tangent: TruncatedSeries
    wu_tangent: TruncatedSeries
    wu_normal: TruncatedSeries
    closed_form_agrees: bool


def projective_space_classes(n: int) -> ProjSpaceClasses:
    """Tangent SW class, tangent and normal Wu classes of P^(n-1).

    The Steenrod route is authoritative; agreement with the closed form is
    reported (and logged when it fails) but never raised.
    """
    _require_n(n)
    w = sw_hopf_multiple(n, n)
    v = wu_from_sw(w)
    agrees = v == wu_tangent_closed_form(n)
    if not agrees:
        log.warning("closed-form Wu class disagrees with Sq^-1 route at n=%d", n)
    return ProjSpaceClasses(n=n, sw_tangent=w, wu_tangent=v, wu_normal=invert(v),
                            closed_form_agrees=agrees)


@dataclass(frozen=True)
class ChiResult:
    n: int
    value: int
    route_definition: int
    route_closed_form: int
    route_half_degree: Optional[int] = None


def _wu_stable_inverse_2n_xi(n: int) -> TruncatedSeries:
    v_xi = wu_from_sw(_one_plus_t(n))
    return invert(power(v_xi, 2 * n))


def chi(n: int) -> ChiResult:
    """chi(n): coefficient of t^(n-1) in the Wu class of the stable inverse of 2n*xi.

    Computed three ways (definition, square of v(nu), half-degree coefficient
    of v(nu) for odd n); any disagreement raises RouteDisagreementError.
    Even n is computed, not assumed zero.
    """
    _require_n(n)
    top = n - 1
    by_definition = _wu_stable_inverse_2n_xi(n)[top]
    wu_normal = invert(wu_tangent_closed_form(n))
    by_closed_form = wu_normal.square()[top]
    half = wu_normal[top // 2] if n % 2 else None
    routes = {by_definition, by_closed_form} | ({half} if half is not None else set())
    if len(routes) != 1:
        raise RouteDisagreementError(
            f"chi({n}): definition={by_definition} closed_form={by_closed_form} half={half}"
        )
    return ChiResult(n, by_definition, by_definition, by_closed_form, half)


def condition_s(n: int) -> bool:
    """Whether the normal Wu classes of X_{n,2} vanish in degrees n-1 .. 2n-3.

    These classes are pulled back from P^(n-1), so only degree n-1 survives the
    truncation and the predicate reduces to chi(n) == 0.
    """
    holds = chi(n).value == 0
    wu_inverse = _wu_stable_inverse_2n_xi(n)
    direct = all(wu_inverse[i] == 0 for i in range(n - 1, min(2 * n - 2, n)))
    if direct != holds:
        raise RouteDisagreementError(f"condition S at n={n}: chi says {holds}, scan says {direct}")
    return holds


def radon_hurwitz(n: int) -> int:
    """rho(n) = 2^c + 8d where n = (2a+1) 2^(c+4d), 0 <= c <= 3."""
    _require_n(n, least=1)
    e = (n & -n).bit_length() - 1
    d, c = divmod(e, 4)
    return 2**c + 8 * d


def span_projective(n: int) -> int:
    """Maximal number of independent vector fields on P^(n-1)."""
    _require_n(n)
    return radon_hurwitz(n) - 1
