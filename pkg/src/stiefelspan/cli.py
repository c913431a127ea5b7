"""Command-line front end.

Exit status: 0 on success, 1 when a verification check fails, 2 on usage
errors or rejected inputs.  The default output format can be set with the
STIEFELSPAN_FORMAT environment variable.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Optional, Sequence, TextIO

from .bounds import KOracle, default_oracle, span_report
from .projective import chi, projective_space_classes, radon_hurwitz, span_projective
from .stiefel import cohomology_model, semicharacteristic
from .verify import PUBLISHED_CHI, SUITES, run_suites

FORMAT_ENV = "STIEFELSPAN_FORMAT"
FORMATS = ("text", "json", "csv")
PROVENANCE = ("paper-table", "computed", "theorem-asserted", "oracle", "bracket")
CHI_MAX = 2**20

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


@dataclass
class OutputRecord:
    command: str
    inputs: dict[str, Any]
    results: dict[str, tuple[Any, str]] = field(default_factory=dict)

    def put(self, key: str, value: Any, provenance: str) -> None:
        if provenance not in PROVENANCE:
            raise ValueError(f"unknown provenance tag {provenance!r}")
        self.results[key] = (value, provenance)

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "inputs": dict(self.inputs),
            "results": {k: {"value": v, "provenance": p} for k, (v, p) in self.results.items()},
        }


def dump_json(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def _inputs_text(inputs: dict[str, Any]) -> str:
    return ";".join(f"{k}={v}" for k, v in inputs.items())


CSV_HEADER = ("command", "inputs", "key", "value", "provenance")


def write_records(records: Iterable[OutputRecord], fmt: str, out: TextIO) -> None:
    if fmt == "json":
        for rec in records:
            out.write(dump_json(rec.to_dict()) + "\n")
    elif fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec in records:
            for key, (value, prov) in rec.results.items():
                writer.writerow((rec.command, _inputs_text(rec.inputs), key, dump_json(value), prov))
    else:
        for rec in records:
            out.write(f"{rec.command} {_inputs_text(rec.inputs)}\n")
            for key, (value, prov) in rec.results.items():
                if isinstance(value, list):
                    shown = ", ".join(map(str, value)) or "-"
                else:
                    shown = "-" if value is None else value
                out.write(f"  {key}: {shown} [{prov}]\n")


# -- record builders ---------------------------------------------------------

def chi_record(n: int) -> OutputRecord:
    res = chi(n)
    rec = OutputRecord("chi", {"n": n})
    rec.put("chi", res.value, "computed")
    rec.put("route_definition", res.route_definition, "computed")
    rec.put("route_closed_form", res.route_closed_form, "computed")
    rec.put("route_half_degree", res.route_half_degree, "computed")
    if n in PUBLISHED_CHI:
        rec.put("published", PUBLISHED_CHI[n], "paper-table")
    return rec


def span_record(n: int, r: int, x_height: Optional[int], oracle: KOracle) -> OutputRecord:
    rep = span_report(n, r, x_height=x_height, oracle=oracle)
    inputs: dict[str, Any] = {"n": n, "r": r}
    if x_height is not None:
        inputs["x_height"] = x_height
    rec = OutputRecord("span-report", inputs)
    lower_prov = {"oracle": "oracle", "bracket": "bracket", "trivial": "computed"}
    rec.put("dimension", rep.descriptor.dimension, "computed")
    rec.put("theorem_a_clause", rep.theorem_a_clause.value, "computed")
    rec.put("certified_lower", rep.certified_lower, lower_prov[rep.lower_source])
    rec.put("lower_source", rep.lower_source, lower_prov[rep.lower_source])
    rec.put("stable_lower", rep.stable_lower, lower_prov[rep.stable_lower_source])
    rec.put("k_bracket", list(rep.k_bracket), "bracket")
    rec.put("k_oracle", rep.k_oracle, "oracle")
    rec.put("sw_upper", rep.sw_upper, "computed")
    rec.put("sw_height_source", rep.sw_height_source, "computed")
    rec.put("span_exact", rep.span_exact, "computed")
    rec.put("semichar", rep.semichar, rep.semichar_provenance or "computed")
    rec.put("james_thomas", rep.james_thomas, "theorem-asserted")
    rec.put("chi_n", rep.chi_n, "computed")
    rec.put("browder_dupont_tau_defined", rep.browder_dupont_tau_defined, "computed")
    rec.put("browder_dupont_tau_value", rep.browder_dupont_tau_value, "computed")
    rec.put("notes", list(rep.notes), "paper-table")
    return rec


def cohomology_record(n: int) -> OutputRecord:
    model = cohomology_model(n)
    rec = OutputRecord("cohomology", {"n": n})
    rec.put("dimension", model.dimension, "computed")
    rec.put("poly_truncation", model.poly_truncation, "computed")
    rec.put("exterior_degree", model.exterior_degree, "computed")
    rec.put("betti", list(model.betti), "computed")
    rec.put("poincare_symmetric", model.is_poincare_symmetric(), "computed")
    return rec


def semichar_record(n: int, r: int) -> OutputRecord:
    sc = semicharacteristic(n, r)
    rec = OutputRecord("semichar", {"n": n, "r": r})
    rec.put("semichar", sc.value, sc.provenance)
    return rec


def wu_record(n: int) -> OutputRecord:
    classes = projective_space_classes(n)
    rec = OutputRecord("wu", {"n": n})
    rec.put("sw_tangent", str(classes.sw_tangent), "computed")
    rec.put("wu_tangent", str(classes.wu_tangent), "computed")
    rec.put("wu_normal", str(classes.wu_normal), "computed")
    rec.put("closed_form_agrees", classes.closed_form_agrees, "computed")
    return rec


def rho_record(n: int) -> OutputRecord:
    rec = OutputRecord("rho", {"n": n})
    rec.put("rho", radon_hurwitz(n), "computed")
    if n >= 2:
        rec.put("span_projective", span_projective(n), "computed")
    return rec


# -- argument handling ------------------------------------------------------

def parse_range(text: str) -> range:
    """``"3..19"`` or ``"7"``, inclusive, inside [2, 2^20]."""
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed interval {text!r}; expected A..B") from None
    if not 2 <= lo <= hi <= CHI_MAX:
        raise argparse.ArgumentTypeError(f"interval {text!r} must satisfy 2 <= A <= B <= {CHI_MAX}")
    return range(lo, hi + 1)


def _iter_chi(ns: Iterable[int], jobs: int) -> Iterator[OutputRecord]:
    if jobs <= 1:
        yield from map(chi_record, ns)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(chi_record, ns, chunksize=32)


def _write_chi_table(records: Iterable[OutputRecord], out: TextIO, width: int = 16) -> None:
    def flush(block: list[OutputRecord]) -> None:
        ns = [str(r.inputs["n"]) for r in block]
        vals = [str(r.results["chi"][0]) for r in block]
        cols = [max(len(a), len(b)) for a, b in zip(ns, vals)]
        out.write("n      | " + " | ".join(a.rjust(c) for a, c in zip(ns, cols)) + "\n")
        out.write("chi(n) | " + " | ".join(b.rjust(c) for b, c in zip(vals, cols)) + "\n")

    block: list[OutputRecord] = []
    for rec in records:
        block.append(rec)
        if len(block) == width:
            flush(block)
            block = []
    if block:
        flush(block)


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS,
                        help=f"output format (default: ${FORMAT_ENV} or text)")
    common.add_argument("--oracle-file", default=argparse.SUPPRESS,
                        help="k_{n,r} table replacing the seeded one")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="stiefelspan", parents=[common],
        description="Characteristic-class invariants and span bounds for projective Stiefel manifolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chi", parents=[common], help="chi(n) over an interval A..B")
    p.add_argument("range", type=parse_range)
    p.add_argument("--odd-only", action="store_true", help="odd n only; text output as a two-row table")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for long sweeps")

    p = sub.add_parser("span-report", parents=[common], help="span bounds for X_{n,r}")
    p.add_argument("n", type=int)
    p.add_argument("r", type=int)
    p.add_argument("--x-height", type=int, default=None,
                   help="height of x = w_1(xi) in H*(X_{n,r}) for r > 2 (enables the SW upper bound)")

    p = sub.add_parser("verify-paper", parents=[common], help="run the published-value regression suites")
    p.add_argument("--suite", action="append", choices=list(SUITES), help="run only this suite (repeatable)")

    p = sub.add_parser("cohomology", parents=[common], help="Betti numbers of X_{n,2}")
    p.add_argument("n", type=int)
    p = sub.add_parser("semichar", parents=[common], help="mod-2 semi-characteristic of X_{n,r}")
    p.add_argument("n", type=int)
    p.add_argument("r", type=int)
    p = sub.add_parser("wu", parents=[common], help="tangent and normal Wu classes of P^(n-1)")
    p.add_argument("n", type=int)
    p = sub.add_parser("rho", parents=[common], help="Radon-Hurwitz number rho(n)")
    p.add_argument("n", type=int)
    return parser


def _resolve_format(args: argparse.Namespace, parser: argparse.ArgumentParser) -> str:
    fmt = getattr(args, "format", None) or os.environ.get(FORMAT_ENV) or "text"
    if fmt not in FORMATS:
        parser.error(f"${FORMAT_ENV}={fmt!r} is not one of {', '.join(FORMATS)}")
    return fmt


def _verify(args: argparse.Namespace, fmt: str, oracle: KOracle, out: TextIO) -> int:
    results = run_suites(args.suite, oracle=oracle)
    failed = [r for r in results if not r.passed]
    if fmt == "json":
        summary = {
            "command": "verify-paper",
            "passed": not failed,
            "suites_run": len(results),
            "suites_passed": len(results) - len(failed),
            "first_failure": failed[0].name if failed else None,
            "suites": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        }
        out.write(dump_json(summary) + "\n")
    elif fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(("suite", "passed", "detail"))
        for r in results:
            writer.writerow((r.name, dump_json(r.passed), r.detail))
    else:
        for r in results:
            out.write(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}\n")
        if failed:
            out.write(f"{len(failed)} of {len(results)} suites failed; first failure: {failed[0].name}\n")
        else:
            out.write(f"{len(results)} suites passed\n")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def main(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = _resolve_format(args, parser)
    try:
        oracle_file = getattr(args, "oracle_file", None)
        oracle = KOracle.load(oracle_file) if oracle_file else default_oracle()

        if args.command == "verify-paper":
            return _verify(args, fmt, oracle, out)
        if args.command == "chi":
            ns = range(args.range.start | 1, args.range.stop, 2) if args.odd_only else args.range
            records = _iter_chi(ns, args.jobs)
            if args.odd_only and fmt == "text":
                _write_chi_table(records, out)
            else:
                write_records(records, fmt, out)
            return EXIT_OK

        if args.command == "span-report":
            rec = span_record(args.n, args.r, args.x_height, oracle)
        elif args.command == "cohomology":
            rec = cohomology_record(args.n)
        elif args.command == "semichar":
            rec = semichar_record(args.n, args.r)
        elif args.command == "wu":
            rec = wu_record(args.n)
        else:
            rec = rho_record(args.n)
        write_records([rec], fmt, out)
        return EXIT_OK
    except (ValueError, OSError) as exc:
        print(f"stiefelspan: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
