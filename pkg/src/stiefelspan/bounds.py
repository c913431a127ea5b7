"""Span bounds for projective Stiefel manifolds.

The stable-span lower bound k_{n,r} = span(nr*xi) - C(r+1,2) is taken from a
table of published exact values when available.  Otherwise a two-sided
bracket is computed: general position gives span(nr*xi) >= nr - (n-1), and a
nonzero w_j(nr*xi) gives span(nr*xi) <= nr - j.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Literal, Optional, Union

from .projective import RouteDisagreementError, chi
from .series import binomial_parity
from .stiefel import ManifoldDescriptor, dimension, semicharacteristic, sw_tangent

__all__ = [
    "Clause",
    "KOracle",
    "KOracleEntry",
    "SpanReport",
    "browder_dupont_flags",
    "default_oracle",
    "james_thomas",
    "k_bracket",
    "k_oracle",
    "span_report",
    "theorem_a_clause",
    "trivial_lower",
]

X98_NOTE = "X_{9,8} is parallelizable, so span(X_{9,8}) = 36 while k_{9,8} = 28"


class Clause(str, enum.Enum):
    """Which hypothesis of the span >= k_{n,r} theorem applies."""

    A = "a"  # r > 2
    B = "b"  # r = 2, n even
    C = "c"  # r = 2, n = 3 or n odd with chi(n) = 0
    NOT_COVERED = "not-covered"

    def __str__(self) -> str:
        return self.value


def _binom2(m: int) -> int:
    return m * (m - 1) // 2


def trivial_lower(r: int) -> int:
    """C(r, 2): the tangent bundle always splits off that many trivial lines."""
    if r < 1:
        raise ValueError("r must be positive")
    return _binom2(r)


def _max_submask_at_most(m: int, limit: int) -> int:
    # largest j <= limit with C(m, j) odd; greedy works since each bit beats all lower ones
    j = 0
    for b in reversed(range(m.bit_length())):
        bit = 1 << b
        if m & bit and j | bit <= limit:
            j |= bit
    return j


def k_bracket(n: int, r: int) -> tuple[int, int]:
    """Computed interval (low, high) containing k_{n,r}."""
    dimension(n, r)
    m = n * r
    offset = _binom2(r + 1)
    j_star = _max_submask_at_most(m, n - 1)
    assert binomial_parity(m, j_star) == 1
    return m - (n - 1) - offset, m - j_star - offset


@dataclass(frozen=True)
class KOracleEntry:
    n: int
    r: int
    k_value: int
    citation: str


class KOracle:
    """Read-only table of exact k_{n,r} values.

    Every entry is checked against :func:`k_bracket` on construction.
    """

    def __init__(self, entries: Iterable[KOracleEntry] = ()):
        self._table: dict[tuple[int, int], KOracleEntry] = {}
        for entry in entries:
            low, high = k_bracket(entry.n, entry.r)
            if not low <= entry.k_value <= high:
                raise ValueError(
                    f"k_{{{entry.n},{entry.r}}} = {entry.k_value} lies outside "
                    f"the computed bracket [{low}, {high}]"
                )
            self._table[entry.n, entry.r] = entry

    @classmethod
    def parse(cls, text: str) -> KOracle:
        entries = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split(None, 3)
            if len(parts) < 3:
                raise ValueError(f"oracle line {lineno}: expected 'n r k citation', got {line!r}")
            try:
                n, r, k = (int(p) for p in parts[:3])
            except ValueError:
                raise ValueError(f"oracle line {lineno}: n, r, k must be integers") from None
            entries.append(KOracleEntry(n, r, k, parts[3] if len(parts) > 3 else ""))
        return cls(entries)

    @classmethod
    def load(cls, path: Union[str, os.PathLike]) -> KOracle:
        return cls.parse(Path(path).read_text(encoding="utf-8"))

    def get(self, n: int, r: int) -> Optional[KOracleEntry]:
        return self._table.get((n, r))

    def __iter__(self) -> Iterator[KOracleEntry]:
        return iter(sorted(self._table.values(), key=lambda e: (e.n, e.r)))

    def __len__(self) -> int:
        return len(self._table)


_DEFAULT_ORACLE: Optional[KOracle] = None


def default_oracle() -> KOracle:
    """The seeded table shipped with the package."""
    global _DEFAULT_ORACLE
    if _DEFAULT_ORACLE is None:
        text = resources.files("stiefelspan").joinpath("data/k_oracle.txt").read_text("utf-8")
        _DEFAULT_ORACLE = KOracle.parse(text)
    return _DEFAULT_ORACLE


def k_oracle(n: int, r: int, oracle: Optional[KOracle] = None) -> Optional[int]:
    entry = (oracle or default_oracle()).get(n, r)
    return None if entry is None else entry.k_value


def theorem_a_clause(n: int, r: int) -> Clause:
    if r <= 1:
        raise ValueError("the span >= k_{n,r} theorem assumes r > 1")
    dimension(n, r)
    if r > 2:
        return Clause.A
    if n % 2 == 0:
        return Clause.B
    if n == 3 or chi(n).value == 0:
        return Clause.C
    return Clause.NOT_COVERED


def james_thomas(n: int) -> Union[int, Literal["unknown"]]:
    """James-Thomas number of X_{n,2}: 1 for n = 3, 5; undecided for n = 2^t + 1, t >= 3; else 2."""
    if n < 3:
        raise ValueError("X_{n,2} needs n >= 3")
    if n in (3, 5):
        return 1
    if n - 1 >= 8 and (n - 1) & (n - 2) == 0:
        return "unknown"
    return 2


def browder_dupont_flags(n: int) -> tuple[bool, Optional[int]]:
    """(defined, value) for the Browder-Dupont invariant of (tau, canonical trivialization) on X_{n,2}.

    Defined exactly when chi(n) = 0; the value is then the semi-characteristic,
    which must come out 0.
    """
    if n < 3:
        raise ValueError("X_{n,2} needs n >= 3")
    if chi(n).value != 0:
        return False, None
    value = semicharacteristic(n, 2).value
    if value != 0:
        raise RouteDisagreementError(f"b_B(tau, kappa) on X_{{{n},2}} should vanish, got {value}")
    return True, value


LowerSource = Literal["oracle", "bracket", "trivial"]


@dataclass(frozen=True)
class SpanReport:
    descriptor: ManifoldDescriptor
    theorem_a_clause: Clause
    certified_lower: int
    lower_source: LowerSource
    stable_lower: int
    stable_lower_source: LowerSource
    k_bracket: tuple[int, int]
    k_oracle: Optional[int]
    sw_upper: Optional[int]
    sw_height_source: str
    semichar: Optional[int]
    semichar_provenance: Optional[str]
    james_thomas: Union[int, str, None]
    chi_n: int
    browder_dupont_tau_defined: Optional[bool]
    browder_dupont_tau_value: Optional[int]
    notes: list[str] = field(default_factory=list)

    @property
    def span_exact(self) -> Optional[int]:
        """The span when the certified lower bound meets the SW upper bound."""
        if self.sw_upper is not None and self.certified_lower == self.sw_upper:
            return self.sw_upper
        return None


def span_report(n: int, r: int, x_height: Optional[int] = None,
                oracle: Optional[KOracle] = None) -> SpanReport:
    clause = theorem_a_clause(n, r)
    desc = ManifoldDescriptor(n, r)
    dim = desc.dimension
    bracket = k_bracket(n, r)
    k_exact = k_oracle(n, r, oracle)

    if k_exact is not None:
        stable_lower, stable_source = k_exact, "oracle"
    else:
        stable_lower, stable_source = bracket[0], "bracket"
    floor = trivial_lower(r)
    if clause is not Clause.NOT_COVERED and stable_lower >= floor:
        lower, lower_source = stable_lower, stable_source
    else:
        lower, lower_source = floor, "trivial"

    sw = sw_tangent(n, r, x_height)
    sw_upper = dim - sw.classes.degree() if sw.certified else None
    if sw_upper is not None and max(lower, stable_lower) > sw_upper:
        raise ValueError(
            f"X_{{{n},{r}}}: lower bound {max(lower, stable_lower)} exceeds SW upper bound "
            f"{sw_upper} (x-height source: {sw.height_source})"
        )

    semichar = semichar_prov = None
    if dim % 2:
        sc = semicharacteristic(n, r)
        semichar, semichar_prov = sc.value, sc.provenance

    if r == 2:
        jt: Union[int, str, None] = james_thomas(n)
        bd_defined, bd_value = browder_dupont_flags(n)
    else:
        jt, bd_defined, bd_value = None, None, None

    notes = [X98_NOTE] if (n, r) == (9, 8) else []
    return SpanReport(
        descriptor=desc,
        theorem_a_clause=clause,
        certified_lower=lower,
        lower_source=lower_source,
        stable_lower=stable_lower,
        stable_lower_source=stable_source,
        k_bracket=bracket,
        k_oracle=k_exact,
        sw_upper=sw_upper,
        sw_height_source=sw.height_source,
        semichar=semichar,
        semichar_provenance=semichar_prov,
        james_thomas=jt,
        chi_n=chi(n).value,
        browder_dupont_tau_defined=bd_defined,
        browder_dupont_tau_value=bd_value,
        notes=notes,
    )
