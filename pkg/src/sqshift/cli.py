"""Command-line experiment runner.

Subcommands:

    sum        S(x) by the direct / block / both / paper-literal methods
    constants  cutoff-parameterized Euler-product constants
    verify     oracle-equality and identity suites (exit 1 on failure)
    table      residual/fit table over a geometric grid of x
    fit        growth-law and model-constant fits over a grid

Exit codes: 0 success, 1 verification failure, 2 usage error.  Results go
to stdout (or --out); diagnostics to stderr.  Identical flags and seed
reproduce byte-identical output apart from the "execution" block.
"""

from __future__ import annotations

import argparse
import math
import sys
import time

from . import asymptotic, checks, euler, records, summatory
from .errors import CapExceededError

DEFAULT_GRID_RATIO = 10.0**0.25


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _cutoff_int(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"cutoff must be >= 2, got {text}")
    return value


def _cutoff_list(text: str) -> list[int]:
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad cutoff list {text!r}") from exc
    if not values or any(v < 2 for v in values):
        raise argparse.ArgumentTypeError(f"cutoffs must all be >= 2, got {text!r}")
    return values


def parse_grid(spec: str) -> list[int]:
    """Parse "lo:hi[:ratio]" into a deterministic geometric integer grid."""
    parts = spec.split(":")
    if len(parts) not in (2, 3):
        raise argparse.ArgumentTypeError(f"grid must be lo:hi[:ratio], got {spec!r}")
    try:
        lo = float(parts[0])
        hi = float(parts[1])
        ratio = float(parts[2]) if len(parts) == 3 else DEFAULT_GRID_RATIO
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid numbers in {spec!r}") from exc
    if lo < 1 or hi < lo or ratio <= 1:
        raise argparse.ArgumentTypeError(
            f"grid needs 1 <= lo <= hi and ratio > 1, got {spec!r}"
        )
    xs: list[int] = []
    k = 0
    while True:
        x = lo * ratio**k
        if x > hi * (1 + 1e-12):
            break
        xi = round(x)
        if not xs or xi != xs[-1]:
            xs.append(xi)
        k += 1
    return xs


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    p.add_argument("--out", type=str, default=None, help="write results to this path")
    p.add_argument("--seed", type=int, default=checks.DEFAULT_SEED)
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument(
        "--segment-size",
        type=_positive_int,
        default=summatory.DEFAULT_SEGMENT_SIZE,
        help="sieve segment length (default 2**20)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqshift",
        description="Exact summation of tau(n)/2**omega(n) over "
        "square-completed integers, with Euler-product constants and "
        "growth-law diagnostics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sum = sub.add_parser("sum", help="compute S(x)")
    p_sum.add_argument("--x", type=_positive_int, required=True)
    p_sum.add_argument(
        "--method",
        choices=("direct", "block", "both", "paper-literal"),
        default="block",
    )
    p_sum.add_argument(
        "--direct-cap",
        type=_positive_int,
        default=summatory.DEFAULT_DIRECT_CAP,
        help="refuse direct summation beyond this many terms",
    )
    _add_common(p_sum)

    p_const = sub.add_parser("constants", help="Euler-product constants by cutoff")
    group = p_const.add_mutually_exclusive_group(required=True)
    group.add_argument("--cutoff", type=_cutoff_int)
    group.add_argument("--cutoffs", type=_cutoff_list)
    p_const.add_argument("--per-prime", action="store_true",
                         help="include per-prime contributions")
    _add_common(p_const)

    p_verify = sub.add_parser("verify", help="run the verification suites")
    p_verify.add_argument("--max", type=_positive_int, required=True)
    p_verify.add_argument("--random", type=int, default=0,
                          help="additional random x count")
    p_verify.add_argument("--random-lo", type=_positive_int, default=10**5)
    p_verify.add_argument("--random-hi", type=_positive_int, default=10**7)
    p_verify.add_argument(
        "--method",
        choices=("block", "paper-literal"),
        default="block",
        help="block implementation under test (paper-literal must fail)",
    )
    _add_common(p_verify)

    p_table = sub.add_parser("table", help="residual table over a grid")
    p_table.add_argument("--grid", type=parse_grid, default=parse_grid("1e3:1e8"))
    p_table.add_argument("--theta", type=float, default=0.75)
    p_table.add_argument("--c1", type=float, default=None)
    p_table.add_argument("--c2", type=float, default=None)
    p_table.add_argument(
        "--fit-constants",
        action="store_true",
        help="fit (c1, c2) from the data before computing residuals",
    )
    _add_common(p_table)

    p_fit = sub.add_parser("fit", help="growth-law fits over a grid")
    p_fit.add_argument("--grid", type=parse_grid, default=parse_grid("1e3:1e8"))
    _add_common(p_fit)

    return parser


# -- command implementations ------------------------------------------


def _sum_entry(rep: summatory.SumReport) -> dict:
    return {
        "method": rep.method,
        "value": records.dyadic_to_json(rep.value),
        "terms_processed": rep.terms_processed,
    }


def cmd_sum(args) -> tuple[dict, int, list[str]]:
    results: dict = {"x": args.x}
    kw = {"segment_size": args.segment_size, "threads": args.threads}
    if args.method in ("direct", "both"):
        rep = summatory.sum_direct(args.x, cap=args.direct_cap, **kw)
        results["direct"] = _sum_entry(rep)
    if args.method in ("block", "both"):
        rep = summatory.sum_block(args.x, **kw)
        results["block"] = _sum_entry(rep)
    if args.method == "both":
        results["equal"] = (
            records.dyadic_from_json(results["direct"]["value"])
            == records.dyadic_from_json(results["block"]["value"])
        )
    if args.method == "paper-literal":
        rep = summatory.sum_block_paper_literal(args.x, **kw)
        results["paper_literal_block"] = _sum_entry(rep)
        results["warning"] = (
            "non-oracle method: uncorrected block identity; exceeds the "
            "defining sum by f((N+1)**2) - 1"
        )
    text_lines = [
        f"{k}: {v['value']['numerator']}/2^{v['value']['exponent']}"
        f" = {v['value']['float']!r}"
        for k, v in results.items()
        if isinstance(v, dict) and "value" in v
    ]
    return results, 0, text_lines


def cmd_constants(args) -> tuple[dict, int, list[str]]:
    cutoffs = args.cutoffs if args.cutoffs else [args.cutoff]
    estimates = euler.product_constants_series(
        cutoffs, include_per_prime=args.per_prime
    )
    entries = []
    for est in estimates:
        pair = euler.truncated_product_pair(1.0, est.cutoff)
        rel_gap = abs(pair.direct - pair.via_exp_log) / pair.direct
        entry = {
            "cutoff": est.cutoff,
            "s": est.s,
            "c1_partial": records.hp_str(est.c1_partial),
            "c1_partial_f64": est.c1_partial_f64,
            "logderiv_sum": records.hp_str(est.logderiv_sum),
            "logderiv_sum_f64": est.logderiv_sum_f64,
            "c2_partial": records.hp_str(est.c2_partial),
            "c2_partial_f64": est.c2_partial_f64,
            "product_exp_log_rel_gap": float(rel_gap),
        }
        if est.per_prime is not None:
            entry["per_prime"] = [
                {"p": p, "factor": records.hp_str(f), "logderiv_term": records.hp_str(t)}
                for p, f, t in est.per_prime
            ]
        entries.append(entry)
    c1s = [e.c1_partial for e in estimates]
    lds = [e.logderiv_sum for e in estimates]
    in_order = sorted(range(len(estimates)), key=lambda i: estimates[i].cutoff)
    results = {
        "estimates": entries,
        "trend": {
            "c1_strictly_decreasing": all(
                c1s[in_order[i]] > c1s[in_order[i + 1]]
                for i in range(len(in_order) - 1)
            ),
            "logderiv_nondecreasing": all(
                lds[in_order[i]] <= lds[in_order[i + 1]]
                for i in range(len(in_order) - 1)
            ),
        },
    }
    text_lines = [
        f"cutoff {e['cutoff']}: c1_partial={e['c1_partial_f64']!r} "
        f"c2_partial={e['c2_partial_f64']!r}"
        for e in entries
    ]
    return results, 0, text_lines


def cmd_verify(args) -> tuple[dict, int, list[str]]:
    suite = checks.run_all(
        args.max,
        random_count=args.random,
        random_lo=args.random_lo,
        random_hi=args.random_hi,
        seed=args.seed,
        method=args.method,
        segment_size=args.segment_size,
    )
    entries = []
    for res in suite:
        entry = {"name": res.name, "passed": res.passed, "detail": res.detail}
        if res.counterexample is not None:
            entry["counterexample"] = res.counterexample
        entries.append(entry)
    all_passed = all(r.passed for r in suite)
    results = {"suites": entries, "all_passed": all_passed}
    text_lines = [
        f"{e['name']}: {'PASS' if e['passed'] else 'FAIL'} ({e['detail']})"
        for e in entries
    ]
    return results, 0 if all_passed else 1, text_lines


def _grid_points(args) -> list[tuple[int, "summatory.SumReport"]]:
    kw = {"segment_size": args.segment_size, "threads": args.threads}
    return [(x, summatory.sum_block(x, **kw)) for x in args.grid]


def _fit_entries(pts: list[tuple[int, float]]) -> dict:
    log_fit = asymptotic.fit_log_power(pts)
    const_fit = asymptotic.fit_model_constants(pts)
    return {
        "fit_log_power": {
            "coefficient": log_fit.coefficient,
            "exponent": log_fit.exponent,
            "rms_relative_error": log_fit.rms_relative_error,
            "points_used": log_fit.points_used,
        },
        "fit_constants": {
            "c1": const_fit.c1,
            "c2": const_fit.c2,
            "rms_relative_error": const_fit.rms_relative_error,
            "points_used": const_fit.points_used,
            "gamma": const_fit.gamma,
        },
    }


def cmd_table(args) -> tuple[dict, int, list[str]]:
    if (args.c1 is None) != (args.c2 is None):
        raise UsageError("--c1 and --c2 must be given together")
    if args.fit_constants and args.c1 is not None:
        raise UsageError("--fit-constants conflicts with explicit --c1/--c2")
    if min(args.grid) < 3:
        raise UsageError("grid points must be >= 3 so growth-law fits are defined")
    reports = _grid_points(args)
    pts = [(x, rep.value_f64) for x, rep in reports]
    fits = _fit_entries(pts)
    if args.c1 is not None:
        c1, c2 = args.c1, args.c2
        params_source = "flags"
    elif args.fit_constants:
        c1 = fits["fit_constants"]["c1"]
        c2 = fits["fit_constants"]["c2"]
        params_source = "fit"
    else:
        c1, c2 = 0.0, 0.0
        params_source = "default-zero"
    params = asymptotic.ModelParams(c1=c1, c2=c2)
    rows = []
    for x, rep in reports:
        model = asymptotic.model_shifted_sum(x, params)
        residual = rep.value_f64 - model
        rows.append(
            {
                "x": x,
                "exact": str(rep.value),
                "exact_f64": rep.value_f64,
                "model": model,
                "residual": residual,
                "scaled": residual / x**args.theta,
            }
        )
    results = {
        "theta": args.theta,
        "params": {"c1": c1, "c2": c2, "source": params_source},
        "points": rows,
        **fits,
    }
    text_lines = [
        f"x={r['x']}: exact={r['exact']} residual={r['residual']!r} "
        f"scaled={r['scaled']!r}"
        for r in rows
    ]
    return results, 0, text_lines


def cmd_fit(args) -> tuple[dict, int, list[str]]:
    if min(args.grid) < 3:
        raise UsageError("grid points must be >= 3 so growth-law fits are defined")
    reports = _grid_points(args)
    pts = [(x, rep.value_f64) for x, rep in reports]
    fits = _fit_entries(pts)
    results = {
        "grid": [x for x, _ in reports],
        "points_used": len(pts),
        **fits,
    }
    lf = fits["fit_log_power"]
    fc = fits["fit_constants"]
    text_lines = [
        f"fit_log_power: coefficient={lf['coefficient']!r} "
        f"exponent={lf['exponent']!r} rms={lf['rms_relative_error']!r}",
        f"fit_constants: c1={fc['c1']!r} c2={fc['c2']!r} "
        f"rms={fc['rms_relative_error']!r}",
    ]
    return results, 0, text_lines


class UsageError(Exception):
    pass


def _csv_output(command: str, results: dict) -> str:
    if command == "table":
        header = ["x", "exact", "model", "residual", "scaled"]
        rows = [
            [r["x"], r["exact"], r["model"], r["residual"], r["scaled"]]
            for r in results["points"]
        ]
        lf = results["fit_log_power"]
        fc = results["fit_constants"]
        footers = [
            f"fit_log_power coefficient={lf['coefficient']!r} "
            f"exponent={lf['exponent']!r} rms={lf['rms_relative_error']!r}",
            f"fit_constants c1={fc['c1']!r} c2={fc['c2']!r} "
            f"rms={fc['rms_relative_error']!r}",
        ]
        return records.format_csv(header, rows, footers)
    if command == "constants":
        header = [
            "cutoff",
            "c1_partial",
            "c1_partial_f64",
            "logderiv_sum",
            "c2_partial",
            "c2_partial_f64",
        ]
        rows = [
            [
                e["cutoff"],
                e["c1_partial"],
                e["c1_partial_f64"],
                e["logderiv_sum"],
                e["c2_partial"],
                e["c2_partial_f64"],
            ]
            for e in results["estimates"]
        ]
        return records.format_csv(header, rows, [])
    if command == "sum":
        header = ["method", "numerator", "exponent", "float", "terms_processed"]
        rows = [
            [
                v["method"],
                v["value"]["numerator"],
                v["value"]["exponent"],
                v["value"]["float"],
                v["terms_processed"],
            ]
            for v in results.values()
            if isinstance(v, dict) and "value" in v
        ]
        return records.format_csv(header, rows, [])
    if command == "verify":
        header = ["suite", "passed", "detail"]
        rows = [
            [e["name"], e["passed"], e["detail"].replace(",", ";")]
            for e in results["suites"]
        ]
        return records.format_csv(header, rows, [])
    if command == "fit":
        header = ["fit", "param1", "param2", "rms_relative_error"]
        lf = results["fit_log_power"]
        fc = results["fit_constants"]
        rows = [
            ["log_power", lf["coefficient"], lf["exponent"], lf["rms_relative_error"]],
            ["constants", fc["c1"], fc["c2"], fc["rms_relative_error"]],
        ]
        return records.format_csv(header, rows, [])
    raise ValueError(f"no csv layout for {command}")


_COMMANDS = {
    "sum": cmd_sum,
    "constants": cmd_constants,
    "verify": cmd_verify,
    "table": cmd_table,
    "fit": cmd_fit,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        results, code, text_lines = _COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceededError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    seconds = time.perf_counter() - t0

    inputs = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("command", "format", "out", "threads", "segment_size")
        and v is not None
    }
    record = records.make_record(
        args.command,
        inputs,
        results,
        seed=args.seed,
        threads=args.threads,
        segment_size=args.segment_size,
        seconds=seconds,
    )
    if args.format == "json":
        payload = records.dump_json(record)
    elif args.format == "csv":
        payload = _csv_output(args.command, results)
    else:
        payload = "\n".join(text_lines) + "\n"

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return code


if __name__ == "__main__":
    sys.exit(main())
