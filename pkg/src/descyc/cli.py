"""Command-line surface: compute single statistics, run verification
suites, drive deviation scans, print sequences, and manage golden CSVs.

Exit codes are stable for CI use: 0 success, 1 a verification or golden
comparison failed, 2 usage or domain error.  Output is byte-identical
across repeated runs and across --jobs settings; timing is only included
when --timing is passed, since it is inherently nondeterministic.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import asymptotics, cyclic, linear, lyndon, oracle, patterns, verify
from .core import DescentSet, DomainError, InvariantViolation, csv_field

STATISTICS = (
    "alpha", "beta", "alpha-cyc", "beta-cyc", "eulerian", "eulerian-cyc",
    "euler", "euler-k", "alt-cycles", "kz-cycles", "gamma", "gamma-star",
    "cycles-avoid-123", "cycles-avoid-321", "lyndon-count",
    "type-descent-count",
)

SEQUENCES = (
    "alt-cycles", "cycles-avoid-123", "cycles-avoid-321", "gamma",
    "gamma-star", "euler", "eulerian-cyc-row",
)

GOLDEN_DEFAULT_MAX_N = 6


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t.strip()) for t in text.split(","))
    except ValueError:
        raise DomainError(f"bad {what}: {text!r}") from None


def _require(args: argparse.Namespace, names: list[str], statistic: str) -> None:
    for name in names:
        if getattr(args, name.replace("-", "_")) is None:
            raise DomainError(f"{statistic} requires --{name}")


def _compute_value(args: argparse.Namespace) -> int:
    stat = args.statistic
    if stat in ("alpha", "beta", "alpha-cyc", "beta-cyc"):
        _require(args, ["n"], stat)
        I = DescentSet.from_text(args.n, args.set or "")
        return {
            "alpha": linear.alpha,
            "beta": linear.beta,
            "alpha-cyc": cyclic.alpha_cyc,
            "beta-cyc": cyclic.beta_cyc,
        }[stat](I)
    if stat == "eulerian":
        _require(args, ["n", "k"], stat)
        return linear.eulerian(args.n, args.k)
    if stat == "eulerian-cyc":
        _require(args, ["n", "k"], stat)
        return cyclic.cyclic_eulerian(args.n, args.k)
    if stat == "euler":
        _require(args, ["n"], stat)
        return linear.euler_zigzag(args.n)
    if stat == "euler-k":
        _require(args, ["n", "k"], stat)
        return linear.generalized_euler(args.n, args.k)
    if stat == "alt-cycles":
        _require(args, ["n"], stat)
        return cyclic.alternating_cycles(args.n)
    if stat == "kz-cycles":
        _require(args, ["n", "k"], stat)
        return cyclic.kz_cycles(args.n, args.k)
    if stat == "gamma":
        _require(args, ["n"], stat)
        return patterns.gamma(args.n)
    if stat == "gamma-star":
        _require(args, ["n"], stat)
        return patterns.gamma_star(args.n)
    if stat == "cycles-avoid-123":
        _require(args, ["n"], stat)
        return patterns.cycles_avoiding_incr3(args.n)
    if stat == "cycles-avoid-321":
        _require(args, ["n"], stat)
        return patterns.cycles_avoiding_decr3(args.n)
    if stat == "lyndon-count":
        _require(args, ["n", "evaluation"], stat)
        return lyndon.count_lyndon(
            args.n, _parse_int_list(args.evaluation, "evaluation"))
    if stat == "type-descent-count":
        _require(args, ["type"], stat)
        parts = _parse_int_list(args.type, "type")
        lam = lyndon.Partition(parts)
        n = args.n if args.n is not None else lam.n
        if n != lam.n:
            raise DomainError(f"--n {n} does not match type size {lam.n}")
        I = DescentSet.from_text(n, args.set or "")
        return lyndon.count_by_type_and_descents(lam, I, exact=not args.contained)
    raise DomainError(f"unknown statistic {stat!r}")


def _cmd_compute(args: argparse.Namespace) -> int:
    value = _compute_value(args)
    if args.format == "json":
        doc = {"statistic": args.statistic, "value": value}
        for key in ("n", "k", "set", "evaluation", "type"):
            arg = getattr(args, key)
            if arg is not None:
                doc[key] = arg
        print(json.dumps(doc, sort_keys=True))
    elif args.format == "csv":
        print("statistic,n,value")
        print(f"{args.statistic},{'' if args.n is None else args.n},{value}")
    else:
        print(value)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    report = verify.run_suite(args.suite, args.max_n)
    if args.format == "json":
        doc = {
            "suite": report.suite,
            "max_n": report.max_n,
            "passed": report.passed,
            "checks": [
                {"label": r.label, "ok": r.ok, "witness": r.witness}
                for r in report.results
            ],
        }
        print(json.dumps(doc, sort_keys=True))
    elif args.format == "csv":
        print("status,label,witness")
        for r in report.results:
            status = "PASS" if r.ok else "FAIL"
            print(f"{status},{r.label},{r.witness}")
    else:
        for r in report.results:
            tail = f"  ({r.witness})" if r.witness else ""
            print(f"{'PASS' if r.ok else 'FAIL'}  {r.label}{tail}")
        total = len(report.results)
        failed = sum(1 for r in report.results if not r.ok)
        print(f"{total - failed}/{total} checks passed")
    return 0 if report.passed else 1


def _parse_family(text: str, n: int) -> asymptotics.Family:
    parts = text.split(":")
    if parts[0] == "all-proper" and len(parts) == 1:
        return asymptotics.Family.all_proper(n)
    if parts[0] == "periodic" and len(parts) == 3:
        try:
            ell = int(parts[1])
        except ValueError:
            raise DomainError(f"bad period {parts[1]!r}") from None
        pattern = _parse_int_list(parts[2], "pattern")
        return asymptotics.Family.periodic(n, ell, pattern)
    if parts[0] == "alt-threshold" and len(parts) == 2:
        try:
            eps = Fraction(parts[1])
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"bad threshold {parts[1]!r}") from None
        return asymptotics.Family.alt_threshold(n, eps)
    raise DomainError(
        f"bad family {text!r}; expected all-proper, periodic:L:PATTERN,"
        " or alt-threshold:EPS")


def _parse_range(args: argparse.Namespace) -> list[int]:
    if (args.n is None) == (args.n_range is None):
        raise DomainError("give exactly one of --n or --n-range")
    if args.n is not None:
        return [args.n]
    pieces = args.n_range.split(":")
    if len(pieces) not in (2, 3):
        raise DomainError(f"bad range {args.n_range!r}; expected START:STOP[:STEP]")
    try:
        start, stop = int(pieces[0]), int(pieces[1])
        step = int(pieces[2]) if len(pieces) == 3 else 1
    except ValueError:
        raise DomainError(f"bad range {args.n_range!r}") from None
    if step < 1 or stop < start:
        raise DomainError(f"bad range {args.n_range!r}")
    return list(range(start, stop + 1, step))


def _cmd_scan(args: argparse.Namespace) -> int:
    sizes = _parse_range(args)
    reports = []
    for n in sizes:
        family = _parse_family(args.family, n)
        reports.append(asymptotics.beta_deviation_scan(family, jobs=args.jobs))
    if args.format == "json":
        doc = {"reports": [r.to_json_dict(include_timing=args.timing)
                           for r in reports]}
        print(json.dumps(doc, sort_keys=True))
    elif args.format == "csv":
        header = "n,family,max_deviation_num,max_deviation_den,argmax_set,member_count"
        if args.timing:
            header += ",elapsed_ms"
        print(header)
        for r in reports:
            row = (f"{r.n},{r.family},{r.max_deviation.numerator},"
                   f"{r.max_deviation.denominator},{csv_field(r.argmax.to_text())},"
                   f"{r.member_count}")
            if args.timing:
                row += f",{int(r.elapsed_s * 1000)}"
            print(row)
    else:
        for r in reports:
            dev = r.max_deviation
            approx = f"{float(dev):.6g}"
            line = (f"n={r.n} family={r.family} max_deviation={dev} (~{approx})"
                    f" argmax={{{r.argmax.to_text()}}} members={r.member_count}")
            if args.timing:
                line += f" elapsed_ms={int(r.elapsed_s * 1000)}"
            print(line)
    return 0


def _sequence_rows(name: str, max_n: int) -> list[tuple[int, ...]]:
    if name == "eulerian-cyc-row":
        return [
            (n, k, cyclic.cyclic_eulerian(n, k))
            for n in range(1, max_n + 1)
            for k in range(1, n + 1)
        ]
    func = {
        "alt-cycles": cyclic.alternating_cycles,
        "cycles-avoid-123": patterns.cycles_avoiding_incr3,
        "cycles-avoid-321": patterns.cycles_avoiding_decr3,
        "gamma": patterns.gamma,
        "gamma-star": patterns.gamma_star,
        "euler": linear.euler_zigzag,
    }[name]
    return [(n, func(n)) for n in range(1, max_n + 1)]


def _cmd_sequence(args: argparse.Namespace) -> int:
    if args.max_n < 1:
        raise DomainError(f"--max-n must be >= 1, got {args.max_n}")
    rows = _sequence_rows(args.name, args.max_n)
    triple = args.name == "eulerian-cyc-row"
    if args.format == "json":
        print(json.dumps({"name": args.name, "rows": [list(r) for r in rows]},
                         sort_keys=True))
    else:
        if args.format == "csv":
            print("n,k,value" if triple else "n,value")
        for row in rows:
            print(",".join(str(x) for x in row))
    return 0


def _golden_files(max_n: int) -> dict[str, str]:
    files = {}
    for n in range(1, max_n + 1):
        b_table, bc_table, _ = oracle.brute_tables(n)
        files[f"beta_n{n}.csv"] = b_table.to_csv()
        files[f"beta_cyc_n{n}.csv"] = bc_table.to_csv()
    return files


def _cmd_golden(args: argparse.Namespace) -> int:
    if not 1 <= args.max_n <= oracle.ENUMERATION_CAP:
        raise DomainError(
            f"--max-n must be in 1..{oracle.ENUMERATION_CAP}, got {args.max_n}")
    directory = Path(args.dir)
    files = _golden_files(args.max_n)
    if args.bless:
        directory.mkdir(parents=True, exist_ok=True)
        for name, body in sorted(files.items()):
            (directory / name).write_text(body)
            print(f"wrote {directory / name}")
        return 0
    stale = []
    for name, body in sorted(files.items()):
        path = directory / name
        if not path.exists():
            stale.append(f"missing {path}")
        elif path.read_text() != body:
            stale.append(f"mismatch {path}")
    for line in stale:
        print(line)
    if not stale:
        print(f"{len(files)} golden files match")
    return 1 if stale else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="descyc",
        description="Exact descent-set statistics of permutations and cycles.",
    )
    parser.add_argument(
        "--cache-size", type=int, default=linear.DEFAULT_CACHE_SIZE,
        help="LRU budget for the (n, mask) descent-count memo")
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = {"choices": ("plain", "json", "csv"), "default": "plain"}

    p = sub.add_parser("compute", help="print one exact statistic")
    p.add_argument("statistic", choices=STATISTICS)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--set", help="comma-separated ascending descent set")
    p.add_argument("--evaluation", help="comma-separated letter multiplicities")
    p.add_argument("--type", help="comma-separated cycle-type parts, descending")
    p.add_argument("--contained", action="store_true",
                   help="count descent sets contained in --set, not equal to it")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=verify.SUITES)
    p.add_argument("--max-n", type=int, required=True,
                   help="largest size to check; each check clamps this to"
                        " the cap it is rated for")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("scan", help="deviation scan over a subset family")
    p.add_argument("--family", required=True,
                   help="all-proper | periodic:L:PATTERN | alt-threshold:EPS")
    p.add_argument("--n", type=int)
    p.add_argument("--n-range", help="START:STOP[:STEP], inclusive")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true",
                   help="include elapsed_ms (nondeterministic) in the output")
    p.add_argument("--format", **fmt)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("sequence", help="print a sequence table")
    p.add_argument("name", choices=SEQUENCES)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--format", **fmt)
    p.set_defaults(func=_cmd_sequence)

    p = sub.add_parser("golden", help="check or regenerate golden CSVs")
    p.add_argument("--dir", default="golden")
    p.add_argument("--max-n", type=int, default=GOLDEN_DEFAULT_MAX_N)
    p.add_argument("--bless", action="store_true",
                   help="rewrite the files instead of comparing")
    p.set_defaults(func=_cmd_golden)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cache_size != linear.DEFAULT_CACHE_SIZE:
        if args.cache_size < 1:
            print("error: --cache-size must be >= 1", file=sys.stderr)
            return 2
        linear.set_beta_cache_size(args.cache_size)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        raise


if __name__ == "__main__":
    sys.exit(main())
