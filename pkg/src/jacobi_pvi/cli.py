"""Command-line front end.

``verify`` runs verification suites over ``n <= n_max`` and a ``t``-grid and
writes a JSON report (or a directory of CSV files).  ``sweep`` tabulates
``H_n``, ``H~_n`` and ``W_n`` across a ``t``-grid for plotting.

Exit status: 0 when every residual is within tolerance, 1 when some
residual is not, 2 for invalid input, 3 when the computation loses
precision or fails to converge.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from decimal import Decimal
from pathlib import Path

from .errors import ConvergenceError, DomainError, PrecisionLossError
from .painleve import DEFAULT_T_GRID
from .precision import PrecisionContext
from .suites import SUITES, TABLE_COLUMNS, make_family, run_asymptotic, run_point

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3


def _check_decimals(args, parser):
    values = [("alpha", args.alpha), ("beta", args.beta), ("gamma", args.gamma)]
    values += [("t", t) for t in _t_grid(args)]
    for name, text in values:
        try:
            ok = Decimal(text).is_finite()
        except ArithmeticError:
            ok = False
        if not ok:
            parser.error(f"{name} must be a finite decimal number, got {text!r}")


def _parse_suites(text):
    if text == "all":
        return list(SUITES)
    names = [s.strip() for s in text.split(",") if s.strip()]
    unknown = sorted(set(names) - set(SUITES))
    if unknown:
        raise argparse.ArgumentTypeError(f"unknown suite(s): {', '.join(unknown)}")
    return [s for s in SUITES if s in names]


def _t_grid(args):
    if args.t is not None:
        return [args.t]
    return list(args.t_grid.split(",")) if args.t_grid else list(DEFAULT_T_GRID)


def _row_key(suite, record):
    z = record.get("z", "0")
    return (suite, record["identity_id"], record["n"], Decimal(record["t"]), Decimal(z))


def _map(fn, jobs, items):
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, *zip(*items)))
    return [fn(*item) for item in items]


def _summary(rows):
    out = {}
    for suite, rec in rows:
        s = out.setdefault(suite, {"checked": 0, "skipped": 0, "not_applicable": 0, "failed": 0, "worst_normalized": None})
        s[rec["status"]] += 1
        if not rec["passed"]:
            s["failed"] += 1
        if rec["status"] == "checked":
            worst = s["worst_normalized"]
            if worst is None or Decimal(rec["normalized_residual"]) > Decimal(worst):
                s["worst_normalized"] = rec["normalized_residual"]
    return out


def _write_json(path, report):
    text = json.dumps(report, indent=2) + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _write_csv(path, name, header, rows):
    with open(Path(path) / f"{name}.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


RESIDUAL_FIELDS = ("identity_id", "n", "t", "z", "raw_residual", "normalized_residual",
                   "derivative_error_budget", "tolerance", "status", "passed", "note")


def _verify(args):
    t_grid = _t_grid(args)
    suites = args.suites
    make_family(args.alpha, args.beta, args.gamma, args.digits, args.n_max, t_grid)
    if "special" in suites and Decimal(args.gamma) not in (0, 1):
        if args.suites_requested != "all":
            raise DomainError("the special suite needs gamma = 0 or gamma = 1")
        suites = [s for s in suites if s != "special"]

    items = [(args.alpha, args.beta, args.gamma, args.digits, args.n_max, t, suites) for t in t_grid]
    results = _map(run_point, args.jobs, items)
    rows = [row for _, point_rows in results for row in point_rows]
    if "asymptotic" in suites:
        rows += run_asymptotic(args.alpha, args.beta, args.gamma, args.digits)
    rows.sort(key=lambda r: _row_key(*r))

    tables = {"moments": [], "sequences": []}
    fmt = _canonical_t(args)
    for t, (point, _) in sorted(zip(t_grid, results), key=lambda x: Decimal(x[0])):
        tables["moments"] += [[fmt(t)] + row for row in point["moments"]]
        tables["sequences"] += [[fmt(t)] + row for row in point["sequences"]]
    summary = _summary(rows)
    passed = all(rec["passed"] for _, rec in rows)

    config = {
        "alpha": args.alpha, "beta": args.beta, "gamma": args.gamma, "t_grid": t_grid,
        "n_max": args.n_max, "digits": args.digits, "suites": suites,
    }
    if args.format == "json":
        _write_json(args.output, {
            "config": config,
            "tables": {
                "moments": {"columns": ["t", "k", "mu"], "rows": tables["moments"]},
                "sequences": {"columns": ["t", "n", *TABLE_COLUMNS], "rows": tables["sequences"]},
            },
            "residuals": [dict(rec, suite=suite) for suite, rec in rows],
            "summary": {"suites": summary, "passed": passed},
        })
    else:
        if not args.output:
            raise DomainError("--format csv needs --output DIRECTORY")
        Path(args.output).mkdir(parents=True, exist_ok=True)
        _write_csv(args.output, "moments", ["t", "k", "mu"], tables["moments"])
        _write_csv(args.output, "sequences", ["t", "n", *TABLE_COLUMNS], tables["sequences"])
        for suite in suites:
            _write_csv(args.output, f"residuals_{suite}", RESIDUAL_FIELDS,
                       [[rec.get(f, "") for f in RESIDUAL_FIELDS] for s, rec in rows if s == suite])
        _write_csv(args.output, "summary", ["suite", "checked", "skipped", "not_applicable", "failed", "worst_normalized"],
                   [[s, v["checked"], v["skipped"], v["not_applicable"], v["failed"], v["worst_normalized"] or ""]
                    for s, v in summary.items()])

    stream = sys.stderr if args.format == "json" and args.output in (None, "-") else sys.stdout
    for suite, s in summary.items():
        verdict = "PASS" if s["failed"] == 0 else "FAIL"
        print(f"{verdict} {suite}: {s['checked']} checked, {s['skipped']} skipped, "
              f"{s['not_applicable']} n/a, {s['failed']} failed, worst {s['worst_normalized']}", file=stream)
    return EXIT_OK if passed else EXIT_FAILED


def _canonical_t(args):
    ctx = PrecisionContext(args.digits)
    return lambda t: ctx.format(ctx.real(t))


def _sweep_point(alpha, beta, gamma, digits, n_max, t):
    tables, _ = run_point(alpha, beta, gamma, digits, n_max, t, [])
    cols = ("n", *TABLE_COLUMNS)
    return [(int(row[0]), row[cols.index("H")], row[cols.index("H_tilde")], row[cols.index("W")]) for row in tables["sequences"]]


def _sweep(args):
    t_grid = sorted(_t_grid(args), key=Decimal)
    if len(t_grid) < 2:
        raise DomainError("sweep needs a t-grid of at least two points")
    make_family(args.alpha, args.beta, args.gamma, args.digits, args.n_max, t_grid)
    items = [(args.alpha, args.beta, args.gamma, args.digits, args.n_max, t) for t in t_grid]
    results = _map(_sweep_point, args.jobs, items)
    fmt = _canonical_t(args)
    rows = sorted(
        ((n, fmt(t), H, Ht, W) for t, point in zip(t_grid, results) for n, H, Ht, W in point),
        key=lambda r: (r[0], Decimal(r[1])),
    )
    out = sys.stdout if args.output in (None, "-") else open(args.output, "w", newline="", encoding="utf-8")
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["n", "t", "H", "H_tilde", "W"])
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="jacobi-pvi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--alpha", required=True, help="exponent at x = 0 (decimal string, > 0)")
        p.add_argument("--beta", required=True, help="exponent at x = 1 (decimal string, > 0)")
        p.add_argument("--gamma", required=True, help="exponent of (x - t) (decimal string)")
        grid = p.add_mutually_exclusive_group()
        grid.add_argument("--t", help="single negative t")
        grid.add_argument("--t-grid", help="comma-separated negative t values, written --t-grid=-1,-2 "
                          "(default -0.25,-0.5,-1,-2,-5)")
        p.add_argument("--n-max", type=int, default=4)
        p.add_argument("--digits", type=int, default=50, help="target decimal digits (>= 30)")
        p.add_argument("--jobs", type=int, default=1, help="worker processes across t points")
        p.add_argument("--output", "-o", help="output path ('-' or omitted: stdout)")

    v = sub.add_parser("verify", help="run verification suites and write a report")
    common(v)
    v.add_argument("--suites", default="all", help=f"'all' or comma-separated subset of {','.join(SUITES)}")
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.set_defaults(handler=_verify)

    s = sub.add_parser("sweep", help="tabulate H, H~ and W over a t-grid as CSV")
    common(s)
    s.set_defaults(handler=_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        args.suites_requested = args.suites
        try:
            args.suites = _parse_suites(args.suites)
        except argparse.ArgumentTypeError as exc:
            parser.error(str(exc))
    if args.n_max < 0:
        parser.error("--n-max must be non-negative")
    _check_decimals(args, parser)
    try:
        return args.handler(args)
    except (DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionLossError as exc:
        print(f"precision loss at n = {exc.n} in {exc.quantity}: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except ConvergenceError as exc:
        print(f"no convergence: {exc}", file=sys.stderr)
        return EXIT_PRECISION


if __name__ == "__main__":
    sys.exit(main())
