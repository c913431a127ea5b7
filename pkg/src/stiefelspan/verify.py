"""Regression suites against the published tables and examples.

Each suite returns a :class:`CheckResult`; :func:`run_suites` runs a selection
in a fixed order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .bounds import KOracle, default_oracle, k_bracket, span_report
from .projective import chi, projective_space_classes
from .series import TruncatedSeries, binomial_parity, parse_series
from .steenrod import sq_total
from .stiefel import cohomology_model, semicharacteristic, sw_tangent

# Published chi(n) for small odd n.
PUBLISHED_CHI = {3: 1, 5: 0, 7: 0, 9: 0, 11: 1, 13: 0, 15: 0, 17: 0, 19: 0}

EVEN_CHI_LIMIT = 2048
SEMICHAR_LIMIT = 2048


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_chi_table() -> CheckResult:
    got = {n: chi(n).value for n in PUBLISHED_CHI}
    bad = {n: v for n, v in got.items() if v != PUBLISHED_CHI[n]}
    row = ",".join(str(got[n]) for n in sorted(got))
    return CheckResult("chi-table", not bad, f"odd n=3..19 -> {row}" + (f"; mismatches {bad}" if bad else ""))


def check_even_chi(limit: int = EVEN_CHI_LIMIT) -> CheckResult:
    bad = [n for n in range(2, limit + 1, 2) if chi(n).value != 0]
    return CheckResult("even-chi", not bad,
                       f"chi(n)=0 for all even n<={limit}" if not bad else f"nonzero at {bad[:10]}")


def check_semichar(limit: int = SEMICHAR_LIMIT) -> CheckResult:
    asym, nonzero = [], []
    for n in range(3, limit + 1):
        if not cohomology_model(n).is_poincare_symmetric():
            asym.append(n)
        if semicharacteristic(n, 2).value != 0:
            nonzero.append(n)
    ok = not asym and not nonzero
    detail = (f"chi_2(X_{{n,2}})=0 and Betti symmetric for 3<=n<={limit}" if ok
              else f"asymmetric {asym[:10]}, nonzero chi_2 {nonzero[:10]}")
    return CheckResult("semichar", ok, detail)


def check_lucas_stable_span(oracle: Optional[KOracle] = None) -> CheckResult:
    problems = []
    for s in range(1, 11):
        for r in range(1, 2**s + 1):
            if binomial_parity(2 ** (s + 1) - r, 2**s - r) != 1:
                problems.append(f"C(2^{s + 1}-{r}, 2^{s}-{r}) even")
    for m in range(3, 11):
        n = 2**m - 3
        if sw_tangent(n, 2).classes[2**m - 6] != 1:
            problems.append(f"w_{2 ** m - 6}(X_{{{n},2}}) = 0")
        rep = span_report(n, 2, oracle=oracle)
        if not (rep.stable_lower == rep.sw_upper == n and rep.stable_lower_source == "oracle"):
            problems.append(f"stable span of X_{{{n},2}} not pinned to {n}")
    return CheckResult("lucas-stable-span", not problems,
                       "; ".join(problems[:5]) or "Lucas identity, w_{2^m-6} != 0, stable span 2^m-3 for m=3..10")


def check_oracle_bracket(oracle: Optional[KOracle] = None) -> CheckResult:
    oracle = oracle or default_oracle()
    problems = []
    for e in oracle:
        low, high = k_bracket(e.n, e.r)
        if not low <= e.k_value <= high:
            problems.append(f"k_{{{e.n},{e.r}}}={e.k_value} outside [{low},{high}]")
    if k_bracket(3, 2) != (1, 1):
        problems.append(f"bracket(3,2)={k_bracket(3, 2)}, expected (1,1)")
    if k_bracket(5, 2) != (3, 5):
        problems.append(f"bracket(5,2)={k_bracket(5, 2)}, expected (3,5)")
    return CheckResult("oracle-bracket", not problems,
                       "; ".join(problems) or f"{len(oracle)} seeded values inside their brackets")


def check_p5_witness() -> CheckResult:
    classes = projective_space_classes(6)
    v_tau = parse_series("1 + t^2", 6)
    v_nu = parse_series("1 + t^2 + t^4", 6)
    ok = (
        classes.wu_tangent == v_tau
        and classes.wu_normal == v_nu
        and v_tau * v_nu == TruncatedSeries.one(6)
        and sq_total(v_tau) == classes.sw_tangent
        and classes.wu_normal[4] == 1
    )
    return CheckResult("p5-witness", ok,
                       f"v(tau)={classes.wu_tangent}, v(nu)={classes.wu_normal}, Sq v(tau)={sq_total(classes.wu_tangent)}")


SUITES: dict[str, Callable[[Optional[KOracle]], CheckResult]] = {
    "chi-table": lambda oracle: check_chi_table(),
    "even-chi": lambda oracle: check_even_chi(),
    "semichar": lambda oracle: check_semichar(),
    "lucas-stable-span": check_lucas_stable_span,
    "oracle-bracket": check_oracle_bracket,
    "p5-witness": lambda oracle: check_p5_witness(),
}


def run_suites(names: Optional[Sequence[str]] = None,
               oracle: Optional[KOracle] = None) -> list[CheckResult]:
    selected = list(names) if names else list(SUITES)
    unknown = [s for s in selected if s not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    return [SUITES[name](oracle) for name in selected]
