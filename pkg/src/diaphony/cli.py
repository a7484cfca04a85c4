"""Command-line entry point: ``diaphony <subcommand> ...``.

Point-set files are CSV without a header, one point per row, coordinates
in ``[0, 1)``. Exit codes: 0 success, 1 domain/shape/config error, 2 some
verified inequality failed, 64 usage error.
"""
from __future__ import annotations

import argparse
import io
import math
import sys

from . import constants, haar, l2disc, trig, verify, walsh
from .core import ConfigError, MeasureResult, PointSet, UniformityError, format_point_set, read_point_set
from .generators import GeneratorSpec, generate, symmetrize

EXIT_OK, EXIT_ERROR, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2, 64

POINTS_HELP = "point-set CSV: no header, one point per row, coordinates in [0, 1)"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _format_number(v, digits: int) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if math.isnan(v) or math.isinf(v):
        return "null"
    return f"{v:.{digits}g}"


def to_json(obj, digits: int = 17, indent: int = 2, level: int = 0) -> str:
    """JSON text with floats at ``digits`` significant digits; dict order is kept."""
    pad, inner = " " * (indent * level), " " * (indent * (level + 1))
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(obj, (bool, int, float)):
        return _format_number(obj, digits)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{inner}{to_json(str(k))}: {to_json(v, digits, indent, level + 1)}' for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [inner + to_json(v, digits, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if hasattr(obj, "item"):
        return to_json(obj.item(), digits, indent, level)
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dims(text: str) -> list:
    if ".." in text:
        lo, hi = text.split("..", 1)
        dims = list(range(int(lo), int(hi) + 1))
    else:
        dims = [int(text)]
    if not dims:
        raise ConfigError(f"empty dimension range {text!r}")
    return dims


def _ints(text: str) -> tuple:
    return tuple(int(s) for s in text.replace(" ", "").split(",") if s)


def _floats(text: str) -> tuple:
    return tuple(float(s) for s in text.replace(" ", "").split(",") if s)


def cmd_gen(args) -> int:
    sigma = generate(
        GeneratorSpec(args.kind, args.n, args.d, seed=args.seed, irrational=args.alpha)
    )
    _emit(format_point_set(sigma, args.digits), args.out)
    return EXIT_OK


def cmd_symmetrize(args) -> int:
    sigma = symmetrize(read_point_set(args.input))
    _emit(format_point_set(sigma, args.digits), args.out)
    return EXIT_OK


def cmd_measure(args) -> int:
    sigma = read_point_set(args.input)
    if args.measure == "diaphony":
        if args.method == "exact":
            res = trig.diaphony_exact(sigma)
        elif args.method == "truncated":
            res = trig.diaphony_truncated(sigma, trig.TruncationParams(args.max_index))
        else:
            raise ConfigError("diaphony supports --method exact|truncated")
    elif args.measure == "dyadic":
        if args.method == "exact":
            res = walsh.dyadic_diaphony_exact(sigma)
        elif args.method == "truncated":
            res = walsh.dyadic_diaphony_truncated(sigma, walsh.WalshTruncation(args.max_power))
        else:
            raise ConfigError("dyadic supports --method exact|truncated")
    else:
        if args.method == "exact":
            res = l2disc.l2_exact(sigma)
        elif args.method == "quadrature":
            sq = l2disc.l2_quadrature_oracle(sigma, args.grid)
            res = MeasureResult(math.sqrt(max(sq, 0.0)), "quadrature-oracle", params={"grid": args.grid})
        else:
            raise ConfigError("l2 supports --method exact|quadrature")
    record = {"measure": args.measure, "N": sigma.count, "dim": sigma.dim, **res.to_dict()}
    if args.format == "json":
        _emit(to_json(record, args.digits) + "\n", args.out)
    else:
        buf = io.StringIO()
        buf.write("measure,N,dim,value,method,error_bound\n")
        eb = "" if res.error_bound is None else _format_number(res.error_bound, args.digits)
        buf.write(
            f"{args.measure},{sigma.count},{sigma.dim},"
            f"{_format_number(res.value, args.digits)},{res.method},{eb}\n"
        )
        _emit(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_constants(args) -> int:
    tables = [constants.constant_table(d).to_dict() for d in _dims(args.d)]
    bounds = constants.diaphony_constant_bounds()
    if args.format == "json":
        _emit(to_json({"tables": tables, "bounds": bounds}, args.digits) + "\n", args.out)
        return EXIT_OK
    buf = io.StringIO()
    cols = list(tables[0])
    buf.write(",".join(cols) + "\n")
    for row in tables:
        buf.write(",".join(_format_number(row[c], args.digits) for c in cols) + "\n")
    buf.write("\nbound,value\n")
    for k, v in bounds.items():
        buf.write(f"{k},{_format_number(v, args.digits)}\n")
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def _reports_for_input(theorem: str, sigma: PointSet, N) -> list:
    if theorem in ("1", "8"):
        check = verify.check_theorem1 if theorem == "1" else verify.check_theorem8
        return [check(sigma)]
    if theorem in ("2", "9"):
        check = verify.check_theorem2 if theorem == "2" else verify.check_theorem9
        p = 2**sigma.dim
        Ns = [N] if N is not None else range(p, p * sigma.count + 1)
        return [check(sigma, n) for n in Ns]
    if theorem in ("A", "B"):
        return [verify.check_lower_bound_l2(sigma, f"theorem-{theorem}")]
    if theorem in ("4", "10"):
        return [verify.check_lower_bound_diaphony(sigma, f"theorem-{theorem}")]
    return l2disc.prefix_inequality_sweep(sigma, N)


def cmd_verify(args) -> int:
    if args.input:
        sigma = read_point_set(args.input)
        reports = _reports_for_input(args.theorem, sigma, args.N)
    else:
        reports = verify.random_trials(args.theorem, args.d, args.trials, args.seed)
    _emit(to_json([r.to_dict() for r in reports], args.digits) + "\n", args.out)
    return EXIT_OK if all(r.holds for r in reports) else EXIT_VIOLATION


def cmd_track(args) -> int:
    records = verify.track_ratio(GeneratorSpec(args.generator, args.max_n), args.max_n, args.measure)
    buf = io.StringIO()
    buf.write("N,F,ratio,running_max\n")
    f = lambda v: _format_number(v, args.digits)  # noqa: E731
    for r in records:
        buf.write(f"{r.N},{f(r.F)},{f(r.ratio)},{f(r.running_max)}\n")
    _emit(buf.getvalue(), args.out)
    print(f"note: {verify.TRACK_NOTE}", file=sys.stderr)
    return EXIT_OK


def cmd_haar(args) -> int:
    j = _ints(args.j)
    m = _ints(args.m) if args.m else (0,) * len(j)
    idx = (j, m)
    if args.coeff == "monomial":
        value = haar.haar_coeff_monomial(idx)
    elif args.coeff == "indicator":
        if args.z is None:
            raise ConfigError("--coeff indicator needs --z")
        value = haar.haar_coeff_indicator(_floats(args.z), idx)
    else:
        if args.input is None:
            raise ConfigError("--coeff discrepancy needs --input")
        value = haar.haar_coeff_discrepancy(read_point_set(args.input), idx)
    record = {"coeff": args.coeff, "j": list(j), "m": list(m), "value": value}
    _emit(to_json(record, args.digits) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.RawDescriptionHelpFormatter
    parser = _Parser(prog="diaphony", description=__doc__, formatter_class=fmt)
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def common(p, out_help="write to this file instead of standard output"):
        p.add_argument("--digits", type=int, default=17, help="significant digits for numbers (default 17)")
        p.add_argument("--out", help=out_help)

    p = sub.add_parser("gen", help="generate a point set", formatter_class=fmt,
                       description=f"Generate a point set and write it as CSV.\n\nOutput: {POINTS_HELP}.")
    p.add_argument("--kind", required=True, choices=["vdc", "kronecker", "hammersley", "random"])
    p.add_argument("--n", type=int, required=True, help="number of points")
    p.add_argument("--d", type=int, default=None, help="dimension (random only; default 1, hammersley 2)")
    p.add_argument("--seed", type=int, help="PCG64 seed, required for random")
    p.add_argument("--alpha", type=float, default=(math.sqrt(5.0) - 1.0) / 2.0,
                   help="irrational in (0, 1) for kronecker (default golden fraction)")
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("measure", help="compute a uniformity measure", formatter_class=fmt,
                       description=f"Compute diaphony, dyadic diaphony or L2-discrepancy.\n\nInput: {POINTS_HELP}.\n"
                                   "Output: JSON record (value, method, error_bound, params) or one CSV row.")
    p.add_argument("--measure", required=True, choices=["diaphony", "dyadic", "l2"])
    p.add_argument("--method", default="exact", choices=["exact", "truncated", "quadrature"])
    p.add_argument("--max-index", type=int, default=2048, help="diaphony truncation |m_i| <= M (default 2048)")
    p.add_argument("--max-power", type=int, default=16, help="dyadic truncation k_j < 2^K (default 16)")
    p.add_argument("--grid", type=int, default=256, help="midpoints per axis for the l2 quadrature oracle")
    p.add_argument("--input", required=True, help="point-set CSV")
    p.add_argument("--format", default="json", choices=["json", "csv"])
    common(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("symmetrize", help="emit all reflections of each point", formatter_class=fmt,
                       description=f"Replace each point by its 2^d reflections, in block order.\n\n"
                                   f"Input and output: {POINTS_HELP}; a zero coordinate is an error.")
    p.add_argument("--input", required=True, help="point-set CSV")
    common(p)
    p.set_defaults(func=cmd_symmetrize)

    p = sub.add_parser("constants", help="tabulate the bound constants", formatter_class=fmt,
                       description="Emit C, alpha, beta, gamma, delta, mu per dimension and the\n"
                                   "one-dimensional diaphony constant bounds, as JSON or CSV.")
    p.add_argument("--d", default="1", help="dimension or range such as 1..10 (default 1)")
    p.add_argument("--format", default="json", choices=["json", "csv"])
    common(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("verify", help="check an inequality numerically", formatter_class=fmt,
                       description="Check an inequality on seeded random trials or on --input.\n\n"
                                   f"Input: {POINTS_HELP}.\nOutput: JSON array of reports "
                                   "(theorem_id, lhs, rhs, margin, holds, near_violation, inputs).\n"
                                   "Exit code 2 if any report has holds = false.")
    p.add_argument("--theorem", required=True, choices=list(verify.THEOREMS))
    p.add_argument("--d", type=int, default=1, help="dimension of random trials (default 1)")
    p.add_argument("--trials", type=int, default=10, help="number of random trials (default 10)")
    p.add_argument("--seed", type=int, default=0, help="base seed of the trials (default 0)")
    p.add_argument("--input", help="check this point set instead of random trials")
    p.add_argument("--N", type=int, default=None,
                   help="prefix length for theorems 2/9 and lemma2 with --input (default: all)")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("track", help="running max of N F_N / sqrt(log N)", formatter_class=fmt,
                       description="Track N F_N / sqrt(log N) along a one-dimensional sequence.\n\n"
                                   "Output: CSV with columns N, F, ratio, running_max. running_max is a\n"
                                   "finite-prefix lower estimate of a limsup, not its value.")
    p.add_argument("--generator", required=True, choices=["vdc", "kronecker"])
    p.add_argument("--measure", default="diaphony", choices=["diaphony", "dyadic"])
    p.add_argument("--max-n", type=int, required=True, help="largest prefix length")
    common(p, "CSV file (default standard output)")
    p.set_defaults(func=cmd_track)

    p = sub.add_parser("haar", help="Haar coefficients", formatter_class=fmt,
                       description="Haar coefficient of x_1...x_d, of an indicator of (z, 1], or of the\n"
                                   f"unnormalised discrepancy function of --input ({POINTS_HELP}).\n"
                                   "Output: JSON record.")
    p.add_argument("--coeff", required=True, choices=["monomial", "indicator", "discrepancy"])
    p.add_argument("--j", required=True, help="comma-separated levels, e.g. 0,1")
    p.add_argument("--m", help="comma-separated positions (default all zero)")
    p.add_argument("--z", help="comma-separated corner for --coeff indicator")
    p.add_argument("--input", help="point-set CSV for --coeff discrepancy")
    common(p)
    p.set_defaults(func=cmd_haar)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        # --help exits 0
        return int(exc.code or 0)
    if getattr(args, "digits", 17) < 1:
        print("diaphony: error: --digits must be positive", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "gen" and args.d is None:
        args.d = 2 if args.kind == "hammersley" else 1
    try:
        return args.func(args)
    except (UniformityError, OSError) as exc:
        print(f"diaphony {args.command}: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())
