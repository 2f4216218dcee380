#!/usr/bin/env python3
"""
dualdeg: degrees of discriminants (projective duals of closed orbits).

Commands:
  degree        : degree for a group/weight, one or more methods cross-checked
  class         : the equivariant class as coefficients of u and sigma1 per GL block
  fg            : the universal polynomial F_G of a semisimple group, in x = y - 1
  boole         : n(a-1)^(n-1)
  grassmannian  : Pluecker-embedded Grassmannians Gr_k(C^n)
  gr3           : Gr_3(C^n) through the <n k> table
  hyperdet      : hyperdeterminant of format n1 x n2 x ...
  family        : gammaab / abn / aa families of GL(n) weights
  verify        : published-value and oracle suites

Env (optional, .env honoured): DUALDEG_SEED, DUALDEG_JOBS, DUALDEG_LOG_LEVEL,
                               DUALDEG_MAX_ORBIT, DUALDEG_MAX_WEYL, DUALDEG_MAX_SYMFUN_N
Usage: python dualdeg.py degree --group GL8 --weight L:1,1,1,0,0,0,0,0 [--method orbit ...]
       python dualdeg.py fg --group B2 [--variables y]
       python dualdeg.py verify [--suite paper|oracle|all] [--seed 7]
"""
import os
import sys
import json
import time
import argparse
import logging
from fractions import Fraction
from typing import Any, Dict, List

from dotenv import load_dotenv
load_dotenv()

import pandas as pd

import closed_forms
import verify_suites
from degree_engine import (
    DEFAULT_JOBS,
    DEFAULT_SEED,
    DegreeReport,
    InconsistencyError,
    class_coefficients,
    degree_report_json,
    fg_polynomial,
)
from exact_algebra import NotDivisibleError, format_rational
from methods import METHODS, normalize_weight, run_methods
from root_systems import build_root_system, parse_group_spec, parse_weight_spec

logger = logging.getLogger("dualdeg")

LOG_LEVEL = os.getenv("DUALDEG_LOG_LEVEL", "WARNING").strip().upper()

EXIT_OK, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2


def setup_logging(level: str = LOG_LEVEL) -> None:
    formatter = logging.Formatter("[%(asctime)sZ] %(levelname)s %(name)s: %(message)s", "%Y-%m-%d %H:%M:%S")
    formatter.converter = time.gmtime
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(formatter)
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), handlers=[handler], force=True)


# ---------------- rendering ----------------
def _value(x: Any) -> Any:
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else format_rational(x)
    return x


def emit(rows: List[Dict[str, Any]], output: str, payload: Any = None) -> None:
    """Print rows as a pandas table, or payload (default: rows) as sorted JSON."""
    if output == "json":
        body = payload if payload is not None else [{k: _value(v) for k, v in r.items()} for r in rows]
        print(json.dumps(body, sort_keys=True))
        return
    frame = pd.DataFrame([{k: _value(v) for k, v in r.items()} for r in rows])
    print(frame.to_string(index=False))


def emit_report(report: DegreeReport, output: str) -> None:
    if output == "json":
        print(degree_report_json(report))
        return
    d = report.to_dict()
    rows = [{"field": k, "value": ",".join(map(str, v)) if isinstance(v, list) else v} for k, v in d.items()]
    emit(rows, output)


# ---------------- commands ----------------
def _group_and_weight(args):
    rs = parse_group_spec(args.group)
    lam = parse_weight_spec(rs, args.weight)
    return rs, lam


def cmd_degree(args) -> int:
    rs, lam = _group_and_weight(args)
    report = run_methods(rs, lam, args.method or ["orbit"], args.seed, args.jobs)
    emit_report(report, args.output)
    return EXIT_OK


def cmd_class(args) -> int:
    rs, lam = _group_and_weight(args)
    lam = normalize_weight(rs, lam)
    coeffs = class_coefficients(rs, lam, args.seed)
    emit([{"term": name, "coefficient": c} for name, c in coeffs], args.output,
         {name: _value(c) for name, c in coeffs})
    return EXIT_OK


def cmd_fg(args) -> int:
    rs = parse_group_spec(args.group)
    fg = fg_polynomial(rs, args.seed, args.jobs)
    text = fg.render(args.variables)
    if args.output == "json":
        print(json.dumps({"group": fg.group, "basis": args.variables, "polynomial": text}, sort_keys=True))
    else:
        print(text)
    return EXIT_OK


def _family_row(name: str, value: Fraction) -> Dict[str, Any]:
    return {"formula": name, "degree": value, "hypersurface": value > 0}


def cmd_boole(args) -> int:
    value = Fraction(closed_forms.boole_degree(args.n, args.a))
    emit([_family_row(f"boole(n={args.n}, a={args.a})", value)], args.output)
    return EXIT_OK


def cmd_grassmannian(args) -> int:
    value = closed_forms.grassmannian_degree(args.n, args.k)
    emit([_family_row(f"grassmannian(n={args.n}, k={args.k})", value)], args.output)
    return EXIT_OK


def cmd_gr3(args) -> int:
    value = Fraction(closed_forms.gr3_degree(args.n))
    emit([_family_row(f"gr3(n={args.n})", value)], args.output)
    return EXIT_OK


def cmd_hyperdet(args) -> int:
    dims = [int(d) for d in args.dims.replace("x", ",").split(",") if d.strip()]
    emit_report(closed_forms.hyperdet_degree(dims, args.seed), args.output)
    return EXIT_OK


def cmd_family(args) -> int:
    kind = args.kind
    value = closed_forms.family_degree(kind, args.n, args.a, args.b)
    rows = [_family_row(f"{kind}(n={args.n}, a={args.a}, b={args.b})", value)]
    if args.check:
        lam = closed_forms.family_weight(kind, args.n, args.a, args.b)
        rs = build_root_system([("GL", args.n)])
        engine = run_methods(rs, lam, ["orbit"], args.seed, args.jobs)
        rows.append(_family_row(f"engine {lam}", Fraction(engine.degree)))
        if engine.degree != value:
            emit(rows, args.output)
            raise InconsistencyError(f"{kind} formula gives {value}, engine gives {engine.degree}")
    emit(rows, args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify_suites.run_suite(args.suite, args.seed)
    rows = [
        {"check": r.name, "expected": str(r.expected), "actual": str(r.actual),
         "status": "ok" if r.passed else "FAIL", "detail": r.detail}
        for r in results
    ]
    emit(rows, args.output)
    failed = sum(not r.passed for r in results)
    logger.info(f"verify {args.suite}: {len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_INCONSISTENT


# ---------------- argparse ----------------
class _Parser(argparse.ArgumentParser):
    """Usage errors exit 1; 2 is reserved for inconsistent computations."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--jobs", type=int, default=DEFAULT_JOBS)
    common.add_argument("--output", choices=["table", "json"], default="table")
    common.add_argument("--log-level", default=None)

    ap = _Parser(prog="dualdeg", description="Degrees of discriminants of representations")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degree", parents=[common], help="discriminant degree for a group and weight")
    p.add_argument("--group", required=True)
    p.add_argument("--weight", required=True)
    p.add_argument("--method", action="append", choices=METHODS)
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("class", parents=[common], help="equivariant class coefficients")
    p.add_argument("--group", required=True)
    p.add_argument("--weight", required=True)
    p.set_defaults(func=cmd_class)

    p = sub.add_parser("fg", parents=[common], help="universal degree polynomial F_G")
    p.add_argument("--group", required=True)
    p.add_argument("--variables", choices=["x", "y"], default="x")
    p.set_defaults(func=cmd_fg)

    p = sub.add_parser("boole", parents=[common], help="lam = a L1")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.set_defaults(func=cmd_boole)

    p = sub.add_parser("grassmannian", parents=[common], help="lam = L1 + ... + Lk")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_grassmannian)

    p = sub.add_parser("gr3", parents=[common], help="lam = L1 + L2 + L3")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_gr3)

    p = sub.add_parser("hyperdet", parents=[common], help="format n1 x n2 x ...")
    p.add_argument("--dims", required=True, help="e.g. 2,2,3 or 2x2x3")
    p.set_defaults(func=cmd_hyperdet)

    p = sub.add_parser("family", parents=[common], help="gammaab, abn and aa families")
    kinds = p.add_mutually_exclusive_group(required=True)
    kinds.add_argument("--ab", dest="kind", action="store_const", const="abn", help="lam = a L1 + b L2")
    kinds.add_argument("--aabb", dest="kind", action="store_const", const="gammaab",
                       help="lam = (a+b) L1 + b(L2 + ... + L(n-1))")
    kinds.add_argument("--two-row", dest="kind", action="store_const", const="aa", help="lam = a L1 + a L2")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, default=0)
    p.add_argument("--check", action="store_true", help="also run the orbit formula on the family weight")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=["paper", "published", "oracle", "all"], default="all",
                   help="paper: reproduced published values (alias: published)")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level.upper() if args.log_level else LOG_LEVEL)
    try:
        return args.func(args)
    except (InconsistencyError, NotDivisibleError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (ValueError, RuntimeError, ArithmeticError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
