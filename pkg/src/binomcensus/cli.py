"""Command-line front end.

Subcommands: nq, census, verify, lattice, sweep.  Output formats: table
(default, human-readable), json, csv.  Exact integers are serialized as
decimal strings, rationals as "num/den", reals as shortest round-trip
decimals.  Data goes to stdout, diagnostics to stderr.

Exit codes: 0 success, 2 invalid input, 3 oracle mismatch.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from . import census, fields, lattice
from .arith import factor, rad4
from .census import CensusInput
from .fields import build_field, criterion_irreducible, multiplicative_order

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_MISMATCH = 3


def parse_exact_int(text: str) -> int:
    """Parse an integer, allowing scientific notation with integral mantissa.

    '1e9' -> 1000000000; '2.5e3' -> 2500; '1.23e1' is rejected.
    """
    try:
        value = Decimal(text)
    except InvalidOperation as exc:
        raise ValueError(f"not a number: {text!r}") from exc
    if value != value.to_integral_value():
        raise ValueError(f"not an integer: {text!r}")
    return int(value)


def _encode(value):
    """Encode one result value for serialization."""
    if isinstance(value, bool):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, float):
        return value
    if isinstance(value, (list, tuple)):
        return [_encode(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _encode(v) for k, v in value.items()}
    return value


def _record(command: str, params: dict, results: dict, t0: float) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "params": _encode(params),
        "results": _encode(results),
        "wall_time_s": time.perf_counter() - t0,
    }


def _flatten(prefix: str, value, out: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], out)
    elif isinstance(value, list):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, json.dumps(value) if isinstance(value, float) else str(value)))


def _emit(record: dict, fmt: str, rows: list[dict] | None = None) -> None:
    """Write the record to stdout in the requested format.

    For csv, `rows` (a list of flat dicts) renders as a columnar table;
    without rows the record flattens to key,value lines.
    """
    if fmt == "json":
        print(json.dumps(record, sort_keys=True))
        return
    if fmt == "csv":
        buf = io.StringIO()
        if rows is not None:
            encoded = [_encode(r) for r in rows]
            fieldnames = list(encoded[0].keys()) if encoded else []
            writer = csv.DictWriter(buf, fieldnames=fieldnames)
            writer.writeheader()
            for r in encoded:
                writer.writerow(
                    {k: json.dumps(v) if isinstance(v, float) else v for k, v in r.items()}
                )
        else:
            flat: list[tuple[str, str]] = []
            _flatten("", {k: v for k, v in record.items() if k != "schema_version"}, flat)
            writer = csv.writer(buf)
            writer.writerow(["key", "value"])
            writer.writerows(flat)
        sys.stdout.write(buf.getvalue())
        return
    # table
    flat: list[tuple[str, str]] = []
    _flatten("", record["results"], flat)
    width = max((len(k) for k, _ in flat), default=0)
    print(f"# {record['command']} {json.dumps(record['params'], sort_keys=True)}")
    for k, v in flat:
        print(f"{k.ljust(width)}  {v}")
    print(f"# wall_time_s {record['wall_time_s']:.6f}")


def _add_format(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("table", "json", "csv"), default="table", help="output format"
    )


def _cmd_nq(args) -> int:
    t0 = time.perf_counter()
    n = census.nq(args.q, args.t)
    r4 = rad4(factor(args.t))
    eligible = (args.q - 1) % r4 == 0
    branch = f"rad4({args.t}) = {r4} {'divides' if eligible else 'does not divide'} q-1 = {args.q - 1}"
    record = _record(
        "nq",
        {"q": args.q, "t": args.t},
        {"nq": n, "eligible": eligible, "branch": branch},
        t0,
    )
    _emit(record, args.format)
    return EXIT_OK


def _fraction_fields(name: str, value: Fraction) -> dict:
    return {name: value, f"{name}_float": float(value)}


def _cmd_census(args) -> int:
    t0 = time.perf_counter()
    inp = CensusInput.from_q(args.q, args.max_t)
    report = census.census_report(
        inp,
        with_strata=args.strata,
        with_bounds=args.bounds,
        with_asymptotic=args.asymptotic,
        log_power_exponent=args.log_power_exponent,
        log_power_eps=args.log_power_eps,
    )
    results: dict = {
        "q": report.q,
        "max_t": report.max_t,
        "case": report.case,
        "primes": list(report.primes),
        "exact_sum": report.exact,
    }
    if report.strata is not None:
        a, b, c = report.strata
        results["strata"] = {"A": a, "B": b, "C": c}
        results["stratum_identity"] = (report.q - 1) * (a + b + c) == report.exact
        if report.closed_forms is not None:
            rhs_a, rhs_b = report.closed_forms
            results["closed_forms"] = {
                "A": rhs_a,
                "B": rhs_b,
                "match_A": rhs_a == a,
                "match_B": rhs_b == b,
            }
        else:
            results["closed_forms_note"] = report.closed_forms_note
    if args.asymptotic:
        if report.asymptotic is not None:
            results["asymptotic"] = {
                "estimate": report.asymptotic,
                "ratio": report.ratio,
                "ratio_limit": report.limit,
                "estimate_margin": report.asymptotic - report.exact,
            }
        else:
            results["asymptotic_note"] = report.asymptotic_note
    if report.bounds is not None:
        b = report.bounds
        bounds: dict = {
            "naive_lower": b.naive_lower,
            "naive_upper": b.naive_upper,
            "margins": b.margins,
        }
        if b.refined is not None:
            bounds["refined_upper"] = {
                "bound": b.refined.bound,
                "M1": b.refined.m1,
                "M2": b.refined.m2,
                "violated": b.refined.bound < report.exact,
            }
        else:
            bounds["refined_note"] = b.refined_note
        if b.log_power is not None:
            bounds["log_power"] = {
                "bound": b.log_power.bound,
                "valid": b.log_power.valid,
                "threshold": b.log_power.threshold,
                "reason": b.log_power.reason,
                "interpretation": b.log_power.interpretation,
            }
        results["bounds"] = bounds
    record = _record(
        "census",
        {
            "q": args.q,
            "max_t": args.max_t,
            "strata": args.strata,
            "bounds": args.bounds,
            "asymptotic": args.asymptotic,
        },
        results,
        t0,
    )
    _emit(record, args.format)
    return EXIT_OK


def _cmd_verify(args) -> int:
    t0 = time.perf_counter()
    q = args.q
    ceiling = fields.scan_q_ceiling()
    if q > ceiling:
        raise ValueError(f"q = {q} exceeds the oracle ceiling {ceiling}")
    pp = census._prime_power(q)
    if pp is None:
        raise ValueError(f"q = {q} is not a prime power")
    p, e = pp
    ctx = build_field(p, e)
    qm1 = factor(q - 1)
    orders = {
        code: multiplicative_order(ctx, ctx.from_code(code), qm1).order
        for code in range(1, q)
    }
    checked = 0
    for t in range(1, args.max_t + 1):
        mask = fields.oracle_binomial_scan(ctx, t)
        count = sum(mask)
        if t >= 2:
            for code in range(1, q):
                expected = criterion_irreducible(qm1, t, orders[code])
                got = bool(mask[code])
                checked += 1
                if expected != got:
                    record = _record(
                        "verify",
                        {"q": q, "max_t": args.max_t},
                        {
                            "status": "mismatch",
                            "counterexample": {
                                "t": t,
                                "a_code": code,
                                "ord_a": orders[code],
                                "criterion": expected,
                                "rabin": got,
                            },
                        },
                        t0,
                    )
                    _emit(record, args.format)
                    return EXIT_MISMATCH
        formula = census.nq(q, t)
        if count != formula:
            record = _record(
                "verify",
                {"q": q, "max_t": args.max_t},
                {
                    "status": "mismatch",
                    "counterexample": {"t": t, "oracle_count": count, "formula": formula},
                },
                t0,
            )
            _emit(record, args.format)
            return EXIT_MISMATCH
    record = _record(
        "verify",
        {"q": q, "max_t": args.max_t},
        {
            "status": "ok",
            "pairs_checked": checked,
            "degrees_checked": args.max_t,
            "backend": fields.kernel_backend(),
        },
        t0,
    )
    _emit(record, args.format)
    return EXIT_OK


def _cmd_lattice(args) -> int:
    t0 = time.perf_counter()
    if (args.coeffs is None) == (args.primes is None):
        raise ValueError("specify exactly one of --coeffs or --primes")
    if (args.lam is None) == (args.max_t is None):
        raise ValueError("specify exactly one of --lambda or --max-t")
    results: dict = {}
    if args.primes is not None:
        if args.max_t is None:
            raise ValueError("--primes requires --max-t (integer budget)")
        primes = tuple(int(parse_exact_int(x)) for x in args.primes.split(","))
        count = lattice.count_products(primes, args.max_t)
        inst = lattice.LatticeInstance(
            tuple(math.log(p) for p in primes), math.log(args.max_t)
        )
        results["primes"] = list(primes)
        results["max_t"] = args.max_t
    else:
        if args.lam is None:
            raise ValueError("--coeffs requires --lambda (real budget)")
        coeffs = tuple(float(x) for x in args.coeffs.split(","))
        inst = lattice.LatticeInstance(coeffs, args.lam)
        count = lattice.count_real(inst)
        results["coeffs"] = list(coeffs)
        results["lambda"] = args.lam
    results["count"] = count
    if args.bounds:
        lower, upper = lattice.trivial_bounds(inst)
        rlower, rupper = lattice.refined_bounds(inst)
        estimate = lattice.two_term_estimate(inst)
        results["bounds"] = {
            "trivial_lower": lower,
            "trivial_upper": upper,
            "refined_lower": rlower,
            "refined_upper": rupper,
            "refined_lower_violated": rlower >= count,
            "refined_upper_violated": rupper <= count,
            "two_term_estimate": estimate,
            "estimate_hypothesis_ok": lattice.coeffs_are_prime_logs(inst.coeffs),
            "margins": {
                "trivial_lower": lower - count,
                "trivial_upper": upper - count,
                "refined_lower": rlower - count,
                "refined_upper": rupper - count,
                "two_term_estimate": estimate - count,
            },
        }
        if rupper <= count or rlower >= count:
            print(
                f"WARNING: half-shift bound violated: lower={rlower!r} "
                f"upper={rupper!r} count={count}",
                file=sys.stderr,
            )
    record = _record(
        "lattice",
        {
            "coeffs": args.coeffs,
            "primes": args.primes,
            "lambda": args.lam,
            "max_t": args.max_t,
            "bounds": args.bounds,
        },
        results,
        t0,
    )
    _emit(record, args.format)
    return EXIT_OK


def _sweep_row(q: int, max_t: int) -> dict:
    inp = CensusInput.from_q(q, max_t)
    exact = census.exact_sum(inp)
    row: dict = {"T": max_t, "exact_sum": exact}
    lower, upper = census.naive_bounds(inp)
    row["naive_lower"] = lower
    row["naive_upper"] = upper
    try:
        est = census.asymptotic_estimate(inp)
        row["estimate"] = est
        row["estimate_margin"] = est - exact
        row["estimate_rel_error"] = abs(est - exact) / exact if exact else math.nan
        row["ratio"] = census.normalized_ratio(inp)
        row["ratio_limit"] = census.ratio_limit(inp)
        row["ratio_distance"] = abs(row["ratio"] - row["ratio_limit"])
    except census.DegenerateCensusError as exc:
        row["estimate_note"] = str(exc)
    return row


def _cmd_sweep(args) -> int:
    t0 = time.perf_counter()
    t_values = [parse_exact_int(x) for x in args.max_t_list.split(",") if x.strip()]
    if not t_values:
        raise ValueError("empty --max-t-list")
    rows = [_sweep_row(args.q, t) for t in t_values]
    record = _record("sweep", {"q": args.q, "max_t_list": t_values}, {"rows": rows}, t0)
    _emit(record, args.format, rows=rows)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="binomcensus",
        description="Exact censuses of monic irreducible binomials over finite fields.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_nq = sub.add_parser("nq", help="count of irreducible x^t - a for one (q, t)")
    p_nq.add_argument("--q", type=parse_exact_int, required=True)
    p_nq.add_argument("--t", type=parse_exact_int, required=True)
    _add_format(p_nq)
    p_nq.set_defaults(fn=_cmd_nq)

    p_census = sub.add_parser("census", help="exact census sum over t <= max-t")
    p_census.add_argument("--q", type=parse_exact_int, required=True)
    p_census.add_argument("--max-t", type=parse_exact_int, required=True)
    p_census.add_argument("--strata", action="store_true", help="stratum sums A/B/C")
    p_census.add_argument("--bounds", action="store_true", help="all bounds with margins")
    p_census.add_argument("--asymptotic", action="store_true", help="estimate and ratio")
    p_census.add_argument("--log-power-exponent", type=float, default=1.0)
    p_census.add_argument("--log-power-eps", type=float, default=0.5)
    _add_format(p_census)
    p_census.set_defaults(fn=_cmd_census)

    p_verify = sub.add_parser(
        "verify", help="criterion vs Rabin oracle vs formula, exhaustively"
    )
    p_verify.add_argument("--q", type=parse_exact_int, required=True)
    p_verify.add_argument("--max-t", type=parse_exact_int, required=True)
    _add_format(p_verify)
    p_verify.set_defaults(fn=_cmd_verify)

    p_lattice = sub.add_parser("lattice", help="lattice point counts and bounds")
    p_lattice.add_argument("--coeffs", help="comma-separated positive reals")
    p_lattice.add_argument("--primes", help="comma-separated distinct primes")
    p_lattice.add_argument("--lambda", dest="lam", type=float, help="real budget")
    p_lattice.add_argument("--max-t", type=parse_exact_int, help="integer budget")
    p_lattice.add_argument("--bounds", action="store_true")
    _add_format(p_lattice)
    p_lattice.set_defaults(fn=_cmd_lattice)

    p_sweep = sub.add_parser("sweep", help="census across a list of degree bounds")
    p_sweep.add_argument("--q", type=parse_exact_int, required=True)
    p_sweep.add_argument("--max-t-list", required=True, help="e.g. 1e3,1e6,1e9,1e12")
    _add_format(p_sweep)
    p_sweep.set_defaults(fn=_cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad input already
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
