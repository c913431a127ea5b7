"""Projective Stiefel manifolds X_{n,r} = V_{n,r} / (Z/2).

For r = 2 the mod-2 cohomology is Z/2[x]/(x^N) tensor an exterior class x_q,
with (N, q) = (n-1, n-1) for odd n and (n, n-2) for even n.  Only the module
structure and multiplication by powers of x are modelled; x_q^2 is not.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, NamedTuple, Optional

from .series import TruncatedSeries, power

__all__ = [
    "CohomologyModel",
    "ManifoldDescriptor",
    "SemiCharacteristic",
    "TangentSW",
    "cohomology_model",
    "dimension",
    "semicharacteristic",
    "sw_tangent",
]

Provenance = Literal["computed", "theorem-asserted"]
HeightSource = Literal["cohomology-model", "user", "default"]


def dimension(n: int, r: int) -> int:
    """dim X_{n,r} = nr - r(r+1)/2."""
    if not (isinstance(n, int) and isinstance(r, int)) or not 1 <= r < n:
        raise ValueError(f"X_{{n,r}} needs 1 <= r < n, got n={n}, r={r}")
    return n * r - r * (r + 1) // 2


@dataclass(frozen=True)
class ManifoldDescriptor:
    n: int
    r: int

    def __post_init__(self) -> None:
        dimension(self.n, self.r)

    @property
    def dimension(self) -> int:
        return dimension(self.n, self.r)


@dataclass(frozen=True)
class CohomologyModel:
    """Additive model of H*(X_{n,2}; Z/2) on the basis x^j and x_q x^j, 0 <= j < N."""

    n: int
    poly_truncation: int
    exterior_degree: int
    betti: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.betti) - 1

    def basis(self) -> list[tuple[int, int]]:
        """Basis monomials as (j, e) meaning x^j * x_q^e, sorted by degree."""
        mons = [(j, e) for e in (0, 1) for j in range(self.poly_truncation)]
        return sorted(mons, key=lambda m: (self.degree(m), m[1]))

    def degree(self, monomial: tuple[int, int]) -> int:
        j, e = monomial
        return j + e * self.exterior_degree

    def x_times(self, k: int, monomial: tuple[int, int]) -> Optional[tuple[int, int]]:
        """x^k * monomial, or None when it vanishes."""
        j, e = monomial
        return (j + k, e) if j + k < self.poly_truncation else None

    @property
    def top_class(self) -> tuple[int, int]:
        return (self.poly_truncation - 1, 1)

    def is_poincare_symmetric(self) -> bool:
        return self.betti == self.betti[::-1]


def cohomology_model(n: int) -> CohomologyModel:
    if not isinstance(n, int) or n < 3:
        raise ValueError(f"X_{{n,2}} needs n >= 3, got {n!r}")
    if n % 2:
        big_n, q = n - 1, n - 1
    else:
        big_n, q = n, n - 2
    betti = [0] * (dimension(n, 2) + 1)
    for j in range(big_n):
        betti[j] += 1
        betti[q + j] += 1
    return CohomologyModel(n, big_n, q, tuple(betti))


class SemiCharacteristic(NamedTuple):
    value: int
    provenance: Provenance


def semicharacteristic(n: int, r: int) -> SemiCharacteristic:
    """Kervaire mod-2 semi-characteristic of the odd-dimensional X_{n,r}.

    Computed from the cohomology model when r = 2.  For r > 2 the value 0
    comes from a free Z/2 x Z/2 action argument and is returned flagged
    ``theorem-asserted``.
    """
    dim = dimension(n, r)
    if dim % 2 == 0:
        raise ValueError(f"semi-characteristic needs odd dimension; dim X_{{{n},{r}}} = {dim}")
    if r < 2:
        raise ValueError("semi-characteristic is only provided for r >= 2")
    if r > 2:
        return SemiCharacteristic(0, "theorem-asserted")
    model = cohomology_model(n)
    return SemiCharacteristic(sum(model.betti[: (dim - 1) // 2 + 1]) % 2, "computed")


class TangentSW(NamedTuple):
    classes: TruncatedSeries
    height_source: HeightSource

    @property
    def certified(self) -> bool:
        return self.height_source != "default"


def sw_tangent(n: int, r: int, x_height: Optional[int] = None) -> TangentSW:
    """Total Stiefel-Whitney class (1+x)^(nr) of X_{n,r}, in Z/2[x]/(x^H).

    H is known for r = 1 (H = n) and r = 2 (H = N of the cohomology model).
    Otherwise H is ``x_height`` if given, else dim + 1, which cannot certify
    that any class is nonzero.
    """
    dim = dimension(n, r)
    if r in (1, 2):
        height = n if r == 1 else cohomology_model(n).poly_truncation
        if x_height is not None and x_height != height:
            raise ValueError(f"x-height of X_{{{n},{r}}} is {height}, not {x_height}")
        source: HeightSource = "cohomology-model"
    elif x_height is not None:
        if x_height < 1:
            raise ValueError("x-height must be positive")
        height, source = x_height, "user"
    else:
        height, source = dim + 1, "default"
    one_plus_x = TruncatedSeries(height, 0b11 & ((1 << height) - 1))
    return TangentSW(power(one_plus_x, n * r), source)
