"""Command-line front end.

    ecdenom census --curve FILE --max-z Z [--extra-shells K] [--out csv|json] [--svg PATH]
    ecdenom torsion --curve FILE
    ecdenom verify --curve FILE --gen-index I --nmax N
    ecdenom fit-growth --curve FILE --gen-index I --nmin A --nmax B
    ecdenom predict --rank R --max-z Z [--kappa K]

Exit status: 0 on success, 1 on bad input, 2 when a postcondition fails.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Optional

from . import report
from .census import full_report, heuristic_count, run_census
from .curve import CurveModel, Point, make_curve, on_curve
from .errors import (EcDenomError, FactoringTimeout, GeneratorNotOnCurve, InputError,
                     InvariantViolation, ParseError)
from .lattice import MWBasis, fit_growth
from .torsion import torsion_subgroup

_RATIONAL = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


@dataclass(frozen=True)
class CurveInput:
    a_invariants: tuple[int, int, int, int, int]
    generators: tuple[Point, ...]
    label: Optional[str]
    minimal: bool
    curve: CurveModel

    def meta(self) -> dict:
        return {"a_invariants": list(self.a_invariants), "label": self.label, "minimal": self.minimal}


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected an integer or 'p/q' string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL.match(value)
        if m:
            num, den = m.groups()
            if den is not None and int(den) == 0:
                raise ParseError(f"{where}: zero denominator in {value!r}")
            return Fraction(int(num), int(den or 1))
    raise ParseError(f"{where}: expected an integer or 'p/q' string, got {value!r}")


def parse_curve_input(document: str) -> CurveInput:
    """Parse the JSON curve file, e.g.

    {"a_invariants": [0,0,1,-1,0], "generators": [["0","0"]], "minimal": true, "label": "37a1"}
    """
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object")

    ainv = doc.get("a_invariants")
    if (not isinstance(ainv, list) or len(ainv) != 5
            or not all(isinstance(a, int) and not isinstance(a, bool) for a in ainv)):
        raise ParseError("field 'a_invariants': expected a list of 5 integers")
    gens_raw = doc.get("generators", [])
    if not isinstance(gens_raw, list):
        raise ParseError("field 'generators': expected a list of [x, y] pairs")
    minimal = doc.get("minimal", False)
    if not isinstance(minimal, bool):
        raise ParseError("field 'minimal': expected true or false")
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise ParseError("field 'label': expected a string")
    unknown = set(doc) - {"a_invariants", "generators", "minimal", "label"}
    if unknown:
        raise ParseError(f"unknown field(s): {', '.join(sorted(unknown))}")

    curve = make_curve(*ainv)
    gens = []
    for i, pair in enumerate(gens_raw):
        if not isinstance(pair, list) or len(pair) != 2:
            raise ParseError(f"field 'generators[{i}]': expected [x, y]")
        P = Point(_rational(pair[0], f"generators[{i}][0]"), _rational(pair[1], f"generators[{i}][1]"))
        if not on_curve(curve, P):
            raise GeneratorNotOnCurve(f"generators[{i}] = ({P.x}, {P.y}) is not on {curve}")
        gens.append(P)
    return CurveInput(tuple(ainv), tuple(gens), label, minimal, curve)


def parse_big_int(text: str) -> int:
    """Integer from '1000', '10**30' or '1e30' style input, exactly."""
    t = text.strip()
    m = re.fullmatch(r"(\d+)\*\*(\d+)", t)
    if m:
        return int(m.group(1)) ** int(m.group(2))
    try:
        d = Decimal(t)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not d.is_finite() or d != d.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(d)


def _load(path: str) -> CurveInput:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_curve_input(text)


def _generator(ci: CurveInput, index: int) -> Point:
    if not 0 <= index < len(ci.generators):
        raise InputError(f"--gen-index {index} out of range ({len(ci.generators)} generators)")
    return ci.generators[index]


def _emit(text: str):
    sys.stdout.write(text)


def cmd_census(args) -> int:
    ci = _load(args.curve)
    basis = MWBasis(ci.curve, ci.generators, torsion_subgroup(ci.curve))
    result = run_census(basis, args.max_z, args.extra_shells)
    for row in result.rows:
        if not row.record.triple.check(ci.curve):
            raise InvariantViolation(f"record {row.record.nvec} fails the denominator invariants")
    if args.out == "json":
        _emit(report.canonical_json(report.census_dict(result, ci.meta())))
    else:
        _emit(report.census_csv(result))
    print(f"# {ci.label or list(ci.a_invariants)} minimal={str(ci.minimal).lower()} Z={report.short_int(result.Z)} "
          f"total={result.total_count} prime={result.prime_count} shells={result.shells_visited}",
          file=sys.stderr)
    if args.svg:
        svg = report.census_svg(result, basis.rank, args.kappa, ci.label or "")
        with open(args.svg, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    return 0


def cmd_torsion(args) -> int:
    ci = _load(args.curve)
    _emit(report.canonical_json(report.torsion_dict(torsion_subgroup(ci.curve), ci.meta())))
    return 0


def cmd_verify(args) -> int:
    ci = _load(args.curve)
    rep = full_report(ci.curve, _generator(ci, args.gen_index), args.nmax)
    _emit(report.canonical_json(report.div_report_dict(rep, ci.meta())))
    if rep.divisibility_failures:
        print(f"divisibility failed for {rep.divisibility_failures}", file=sys.stderr)
        return 2
    return 0


def cmd_fit_growth(args) -> int:
    ci = _load(args.curve)
    _generator(ci, args.gen_index)
    basis = MWBasis(ci.curve, ci.generators)
    fit = fit_growth(basis, args.gen_index, (args.nmin, args.nmax))
    if not 0 < fit.c_hat <= fit.slope <= fit.C_hat:
        raise InvariantViolation(f"growth fit out of order: {fit}")
    _emit(report.canonical_json(report.growth_dict(fit, ci.meta())))
    return 0


def cmd_predict(args) -> int:
    try:
        pred = heuristic_count(args.rank, args.max_z, args.kappa)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(report.canonical_json(report.prediction_dict(pred, args.max_z, args.kappa)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ecdenom", description="Prime denominators of rational points on elliptic curves.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("census", help="count points with z(P) <= Z and how many have z(P) prime")
    c.add_argument("--curve", required=True)
    c.add_argument("--max-z", required=True, type=parse_big_int)
    c.add_argument("--extra-shells", type=int, default=2)
    c.add_argument("--out", choices=("csv", "json"), default="csv")
    c.add_argument("--svg")
    c.add_argument("--kappa", type=float, default=1.0, help="constant for the heuristic curve in the SVG")
    c.set_defaults(func=cmd_census)

    t = sub.add_parser("torsion", help="rational torsion subgroup")
    t.add_argument("--curve", required=True)
    t.set_defaults(func=cmd_torsion)

    v = sub.add_parser("verify", help="divisibility, prime-index and primitive-divisor reports")
    v.add_argument("--curve", required=True)
    v.add_argument("--gen-index", type=int, default=0)
    v.add_argument("--nmax", type=int, required=True)
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("fit-growth", help="fit log z(nQ) against n^2")
    f.add_argument("--curve", required=True)
    f.add_argument("--gen-index", type=int, default=0)
    f.add_argument("--nmin", type=int, required=True)
    f.add_argument("--nmax", type=int, required=True)
    f.set_defaults(func=cmd_fit_growth)

    pr = sub.add_parser("predict", help="heuristic prime-denominator count for rank r")
    pr.add_argument("--rank", type=int, required=True)
    pr.add_argument("--max-z", required=True, type=parse_big_int)
    pr.add_argument("--kappa", type=float, default=1.0)
    pr.set_defaults(func=cmd_predict)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except (InvariantViolation, AssertionError) as exc:
        print(f"error: invariant violated: {exc}", file=sys.stderr)
        return 2
    except (InputError, FactoringTimeout, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except EcDenomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
