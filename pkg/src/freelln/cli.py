"""Command-line driver.

Subcommands: ``convolve``, ``lln``, ``converge``, ``conjecture``, ``rate-d2``
and ``phi``.  Exit codes: 0 success, 2 input validation, 3 precision budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import experiments as ex
from .errors import InputValidationError, PrecisionBudgetExceeded
from .finite_free_ops import (
    additive_convolve,
    laguerre_profile,
    lln_limit_polynomial,
    lln_limit_roots,
    multiplicative_convolve,
    two_root_profile,
)
from .free_limit_oracle import measure_from_json
from .serialization import (
    format_decimal,
    format_exact,
    load_polynomial,
    load_profile,
    polynomial_to_json,
    rows_to_csv,
    rows_to_json,
)
from .symmetric_core import coefficients_to_profile, profile_to_coefficients

EXIT_OK, EXIT_INPUT, EXIT_PRECISION = 0, 2, 3


def _read_json(path_or_literal: str) -> dict:
    text = path_or_literal.strip()
    if not text.startswith("{"):
        try:
            with open(path_or_literal) as fh:
                text = fh.read()
        except OSError as exc:
            raise InputValidationError(f"cannot read {path_or_literal}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputValidationError(f"invalid JSON: {exc}") from exc


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise InputValidationError(f"bad integer list {text!r}") from exc


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _table(args, rows, **extra) -> None:
    digits = args.digits
    if args.format == "json":
        _emit(args, rows_to_json(rows, digits, **extra))
    else:
        _emit(args, rows_to_csv(rows, digits=digits))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_convolve(args) -> int:
    p = load_polynomial(_read_json(args.first))
    q = load_polynomial(_read_json(args.second))
    if args.mode == "add":
        result = additive_convolve(p, q)
    else:
        P, Q = coefficients_to_profile(p), coefficients_to_profile(q)
        result = profile_to_coefficients(multiplicative_convolve(P, Q))
    _emit(args, json.dumps(polynomial_to_json(result, args.digits), indent=2))
    return EXIT_OK


def cmd_lln(args) -> int:
    P = load_profile(_read_json(args.input))
    R = lln_limit_roots(P)
    rows = [{"i": i, "R_exact": format_exact(r) if R.exact else "",
             "R_decimal": format_decimal(r, args.digits)}
            for i, r in enumerate(R.values, start=1)]
    poly = polynomial_to_json(lln_limit_polynomial(P), args.digits)
    if args.poly_out:
        with open(args.poly_out, "w") as fh:
            json.dump(poly, fh, indent=2)
    if args.format == "json":
        _emit(args, rows_to_json(rows, args.digits, limit_polynomial=poly))
    else:
        _emit(args, rows_to_csv(rows, digits=args.digits))
    return EXIT_OK


def _seed_profile(spec: str):
    if spec.startswith("laguerre:"):
        return laguerre_profile(int(spec.split(":", 1)[1]))
    if spec.startswith("two_root:"):
        return two_root_profile(int(spec.split(":", 1)[1]))
    return load_profile(_read_json(spec))


def cmd_converge(args) -> int:
    cfg = _config(args, "converge")
    P = cfg.seed if cfg.seed is not None else _seed_profile(args.seed)
    rows = ex.converge_study(P, cfg.n_schedule, cfg.rel_tol, cfg.workers)
    _table(args, rows)
    if any(r.get("status") == "precision_budget_exceeded" for r in rows):
        return EXIT_PRECISION
    return EXIT_OK


def cmd_conjecture(args) -> int:
    cfg = _config(args, "conjecture")
    source = cfg.seed
    if source is None:
        if args.family:
            source = args.family
        elif args.measure:
            source = measure_from_json(_read_json(args.measure))
        else:
            raise InputValidationError("conjecture needs --measure or --family")
    rows = ex.conjecture_study(source, cfg.d_schedule, cfg.prec, args.method)
    _table(args, rows)
    return EXIT_OK


def cmd_rate_d2(args) -> int:
    rows = ex.rate_d2_study(args.n_max, Fraction(args.rel_tol))
    _table(args, rows)
    return EXIT_OK


def cmd_phi(args) -> int:
    mu = measure_from_json(_read_json(args.measure))
    _table(args, ex.phi_table(mu, args.points, args.method))
    return EXIT_OK


def _config(args, name) -> ex.ExperimentConfig:
    """Merge an optional JSON config file with command-line flags."""
    data = _read_json(args.config) if getattr(args, "config", None) else {}
    seed = None
    if "seed" in data:
        seed = _seed_profile(json.dumps(data["seed"]) if isinstance(data["seed"], dict)
                             else data["seed"])
    if "measure" in data:
        seed = measure_from_json(data["measure"])
    if "family" in data:
        seed = data["family"]
    kwargs = dict(
        name=data.get("name", name),
        seed=seed,
        n_schedule=tuple(data.get("n_schedule", ())) or _int_list(args.n_schedule),
        d_schedule=tuple(data.get("d_schedule", ())) or _int_list(args.d_schedule),
        rel_tol=Fraction(str(data.get("rel_tol", args.rel_tol))),
        prec=int(data.get("precision_bits", args.precision_bits)),
        out=data.get("out", args.out),
        workers=int(data.get("workers", args.workers)),
    )
    return ex.ExperimentConfig(**kwargs)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-bits", type=int, default=128,
                        help="big-float working precision (default 128)")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--digits", type=int, default=30,
                        help="significant digits in decimal columns")

    parser = argparse.ArgumentParser(
        prog="freelln",
        description="Finite free multiplicative convolution and its law of large numbers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convolve", parents=[common], help="convolve two polynomial files")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--mode", choices=("mult", "add"), default="mult")
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("lln", parents=[common], help="limit roots of n-fold powers")
    p.add_argument("input")
    p.add_argument("--poly-out", help="also write the limit polynomial as JSON")
    p.set_defaults(func=cmd_lln)

    sched = argparse.ArgumentParser(add_help=False)
    sched.add_argument("--config", help="ExperimentConfig JSON (file or literal)")
    sched.add_argument("--n-schedule", default=",".join(map(str, ex.DEFAULT_N_SCHEDULE)))
    sched.add_argument("--d-schedule", default=",".join(map(str, ex.DEFAULT_D_SCHEDULE)))
    sched.add_argument("--rel-tol", default="1e-30")
    sched.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("converge", parents=[common, sched],
                       help="(lambda_i^(n))^(1/n) against the limit roots")
    p.add_argument("seed", nargs="?", default="laguerre:3",
                   help="polynomial JSON, or laguerre:D / two_root:D")
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("conjecture", parents=[common, sched],
                       help="limit-root distributions against Phi(mu)")
    p.add_argument("--measure", help="measure JSON (file or literal)")
    p.add_argument("--family", choices=sorted(ex.FAMILIES))
    p.add_argument("--method", choices=("auto", "numeric"), default="auto")
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("rate-d2", parents=[common], help="degree-two rate example")
    p.add_argument("--n-max", type=int, default=64)
    p.add_argument("--rel-tol", default="1e-30")
    p.set_defaults(func=cmd_rate_d2)

    p = sub.add_parser("phi", parents=[common], help="quantile table of Phi(mu)")
    p.add_argument("measure")
    p.add_argument("--points", type=int, default=99)
    p.add_argument("--method", choices=("auto", "numeric"), default="auto")
    p.set_defaults(func=cmd_phi)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PrecisionBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (InputValidationError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
