"""Command-line front end: ``hlnorm {norm,factorize,verify,suite}``.

Exit codes: 0 success, 1 usage error, 2 I/O or parse error, 3 when
``verify``/``suite`` records a violation.

Report CSV columns: theorem, m, n, p, q, r, s, lhs, rhs, ratio, pass.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from . import factorization, io, opnorm, verify
from .exponents import make_pair

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_VIOLATION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _num(x: float):
    """JSON-safe float; infinities become the string ``"inf"``."""
    x = float(x)
    return x if math.isfinite(x) else ("inf" if x > 0 else "-inf")


def _vec(x) -> list:
    return [float(f"{v:.12g}") for v in x]


def _emit(obj: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, indent=2) + "\n")
        return
    keys = list(obj)
    out.write(",".join(keys) + "\n")
    out.write(",".join(" ".join(map(str, v)) if isinstance(v, list) else str(v)
                       for v in obj.values()) + "\n")


def _norm_opts(args) -> dict:
    return {"tol": args.tol, "max_iter": args.max_iter,
            "multistarts": args.multistarts, "seed": args.seed}


def cmd_norm(args, A, pair, out) -> int:
    if args.resolution is not None:
        est = opnorm.grid_oracle(A, pair, args.resolution)
    elif args.duality:
        est = opnorm.norm_via_duality(A, pair, **_norm_opts(args))
    else:
        est = opnorm.operator_norm(A, pair, **_norm_opts(args))
    _emit({"value": _num(est.value), "method": est.method, "iterations": est.iterations,
           "lower": _num(est.lower), "upper": _num(est.upper), "witness": _vec(est.witness)},
          args.format, out)
    return EXIT_OK


def cmd_factorize(args, A, pair, out) -> int:
    f = factorization.optimize(A, pair, restarts=args.restarts, seed=args.seed,
                               norm_opts=_norm_opts(args))
    _emit({"d": _vec(f.d), "objective": _num(f.objective), "norm": _num(f.norm),
           "gap": _num(f.gap), "iterations": f.iterations, "converged": f.converged,
           "certified": f.certified}, args.format, out)
    return EXIT_OK


def cmd_verify(args, A, pair, out) -> int:
    cfg = verify.SuiteConfig(tol=args.tol, max_iter=args.max_iter, multistarts=args.multistarts)
    records = verify.check_instance(A, pair, args.input, cfg)
    if args.format == "json":
        out.write(json.dumps([r.to_dict() for r in records], indent=2) + "\n")
    else:
        out.write(verify.records_to_csv(records))
    return EXIT_VIOLATION if any(not r.passed for r in records) else EXIT_OK


def cmd_suite(args, out) -> int:
    cfg = verify.SuiteConfig.load(args.config) if args.config else verify.SuiteConfig.default()
    if args.seed is not None:
        cfg.seed = args.seed
    if args.multistarts is not None:
        cfg.multistarts = args.multistarts
    report = verify.run_suite(cfg)
    text = report.to_json() + "\n" if args.format == "json" else report.to_csv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_VIOLATION if report.violations else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hlnorm", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def matrix_command(name, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--input", required=True, help="matrix file (CSV rows or JSON 2-D array)")
        p.add_argument("--input-format", choices=("auto", "csv", "json"), default="auto")
        p.add_argument("--abs", action="store_true", help="take absolute values of signed input")
        p.add_argument("--p", required=True, help='domain exponent, e.g. 3, 5/2 or "inf"')
        p.add_argument("--q", required=True, help="target exponent, q <= p")
        p.add_argument("--tol", type=float, default=opnorm.DEFAULT_TOL)
        p.add_argument("--max-iter", type=int, default=opnorm.DEFAULT_MAX_ITER)
        p.add_argument("--multistarts", type=int, default=opnorm.DEFAULT_MULTISTARTS)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        return p

    norm = matrix_command("norm", "operator norm ||A||_{p,q}")
    norm.add_argument("--resolution", type=int, help="use the brute-force grid oracle (n <= 4)")
    norm.add_argument("--duality", action="store_true", help="compute as ||A^T||_{q*,p*}")
    fac = matrix_command("factorize", "optimize a diagonal factorization A = diag(d) B")
    fac.add_argument("--restarts", type=int, default=2)
    matrix_command("verify", "inequality records for one matrix")

    suite = sub.add_parser("suite", help="run the randomized verification suite")
    suite.add_argument("--config", help="suite config JSON (default: the shipped config)")
    suite.add_argument("--seed", type=int)
    suite.add_argument("--multistarts", type=int)
    suite.add_argument("--format", choices=("json", "csv"), default="json")
    suite.add_argument("--out", help="write the report here instead of stdout")
    return parser


COMMANDS = {"norm": cmd_norm, "factorize": cmd_factorize, "verify": cmd_verify}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "suite":
            return cmd_suite(args, out)
        try:
            pair = make_pair(args.p, args.q)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        A = io.parse_matrix(args.input, args.input_format, args.abs)
        return COMMANDS[args.command](args, A, pair, out)
    except UsageError as exc:
        print(f"hlnorm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, io.MatrixParseError) as exc:
        print(f"hlnorm: error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"hlnorm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
