"""Command-line front end.

Four commands:

* count    -- one Hurwitz number, by any engine
* table    -- all ramification types of a given size, genus 0 and 1
* verify   -- run the identity checks and emit a JSON report
* compare  -- compute by every applicable engine and diff the results

Output is byte-deterministic for a fixed invocation: rows follow the
reverse-lexicographic partition order and all numbers are exact rational
strings (never decimals).  Exit status: 0 success / all pass, 1 a
verification or comparison failure, 2 usage errors (including size
refusals).  The environment variable HURWITZ_TRUNC_N overrides the default
truncation degree when --N is not given.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from . import closedform, cutjoin, oracle, verify
from .oracle import SizeLimitExceeded
from .partitions import Partition, class_size, partitions_of
from .series import Truncation

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

DEFAULT_N = 8


@dataclass(frozen=True)
class RunConfig:
    command: str
    alpha: Partition | None
    g: int
    n: int | None
    N: int
    K: int
    G: int
    method: str
    fmt: str
    genus_max: int = 1
    inject_fault: bool = False


class UsageError(ValueError):
    pass


def parse_partition(text: str) -> tuple[Partition, bool]:
    """Parse a comma-separated partition literal; True if parts were reordered."""
    try:
        parts = [int(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError:
        raise UsageError(f"cannot parse partition literal {text!r}")
    if not parts or any(a < 1 for a in parts):
        raise UsageError(f"partition parts must be positive integers, got {text!r}")
    ordered = sorted(parts, reverse=True)
    return Partition(ordered), ordered != parts


def _default_n() -> int:
    env = os.environ.get("HURWITZ_TRUNC_N")
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"HURWITZ_TRUNC_N must be an integer, got {env!r}")
    return DEFAULT_N


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hurwitz",
        description="Exact genus-0/1 Hurwitz numbers by oracle, cut-and-join, "
        "and closed formula, with identity verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_trunc(p: argparse.ArgumentParser) -> None:
        p.add_argument("--N", type=int, default=None, help="x-degree truncation (default 8)")
        p.add_argument("--K", type=int, default=None, help="p-index truncation (default N)")
        p.add_argument("--G", type=int, default=None, help="genus truncation (default 1)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    pc = sub.add_parser("count", help="one Hurwitz number")
    pc.add_argument("--alpha", required=True, help="partition, e.g. 3,2,2")
    pc.add_argument("--genus", type=int, default=0)
    pc.add_argument("--method", choices=("oracle", "cutjoin", "closed"), default="closed")
    add_trunc(pc)

    pt = sub.add_parser("table", help="all ramification types of size n")
    pt.add_argument("--n", type=int, required=True)
    pt.add_argument("--method", choices=("oracle", "cutjoin", "closed"), default="closed")
    add_trunc(pt)

    pv = sub.add_parser("verify", help="run the identity checks")
    pv.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    add_trunc(pv)

    pp = sub.add_parser("compare", help="diff all applicable engines")
    pp.add_argument("--n", type=int, required=True)
    pp.add_argument("--genus-max", type=int, default=1)
    add_trunc(pp)

    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    N = args.N if args.N is not None else _default_n()
    K = args.K if args.K is not None else N
    G = args.G if args.G is not None else 1
    if K < N:
        raise UsageError(f"--K {K} is below --N {N}; exact coefficients need K >= N")
    alpha = None
    if getattr(args, "alpha", None) is not None:
        alpha, reordered = parse_partition(args.alpha)
        if reordered:
            print(f"note: parts reordered to {alpha}", file=sys.stderr)
    return RunConfig(
        command=args.command,
        alpha=alpha,
        g=getattr(args, "genus", 0),
        n=getattr(args, "n", None),
        N=N,
        K=K,
        G=G,
        method=getattr(args, "method", "closed"),
        fmt=args.format,
        genus_max=getattr(args, "genus_max", 1),
        inject_fault=getattr(args, "inject_fault", False),
    )


def _count_by(method: str, alpha: Partition, g: int, cfg: RunConfig) -> int:
    if method == "oracle":
        return oracle.count_transitive(alpha, g)
    if method == "cutjoin":
        n = alpha.n
        N = max(cfg.N, n)
        r = n + alpha.m + 2 * (g - 1)
        trunc = Truncation(N=N, K=max(cfg.K, N), G=max(cfg.G, g), R=max(2 * N, r))
        return cutjoin.extract_c(cutjoin.evolve(trunc), alpha, g)
    if method == "closed":
        if g > 1:
            raise UsageError(f"closed formulas cover genus <= 1, got {g}")
        return closedform.c_value(alpha, g)
    raise UsageError(f"unknown method {method!r}")


def _mu(alpha: Partition, c: int) -> Fraction:
    return Fraction(class_size(alpha) * c, factorial(alpha.n))


def _emit(rows: list[dict], header: list[str], fmt: str) -> None:
    """CSV renders partitions as "(a1,a2,...)"; JSON as integer arrays."""
    if fmt == "json":
        out = []
        for row in rows:
            rec = dict(row)
            if isinstance(rec.get("alpha"), Partition):
                rec["alpha"] = list(rec["alpha"].parts)
            out.append(rec)
        print(json.dumps(out, indent=2, sort_keys=True))
        return
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([str(row[h]) if isinstance(row[h], Partition) else row[h] for h in header])


def cmd_count(cfg: RunConfig) -> int:
    alpha, g = cfg.alpha, cfg.g
    assert alpha is not None
    if g < 0:
        raise UsageError("genus must be nonnegative")
    c = _count_by(cfg.method, alpha, g, cfg)
    row = {
        "alpha": alpha,
        "g": g,
        "r": alpha.n + alpha.m + 2 * (g - 1),
        "c": c,
        "mu": str(_mu(alpha, c)),
    }
    _emit([row], ["alpha", "g", "r", "c", "mu"], cfg.fmt)
    return EXIT_OK


def cmd_table(cfg: RunConfig) -> int:
    n = cfg.n
    assert n is not None
    if n < 1:
        raise UsageError("n must be at least 1")
    rows = []
    for alpha in partitions_of(n):
        c0 = _count_by(cfg.method, alpha, 0, cfg)
        c1 = _count_by(cfg.method, alpha, 1, cfg)
        rows.append(
            {
                "alpha": alpha,
                "c0": c0,
                "mu0": str(_mu(alpha, c0)),
                "c1": c1,
                "mu1": str(_mu(alpha, c1)),
            }
        )
    _emit(rows, ["alpha", "c0", "mu0", "c1", "mu1"], cfg.fmt)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    trunc = Truncation(N=cfg.N, K=cfg.K, G=cfg.G)
    checks = verify.run_all_checks(trunc, inject_fault=cfg.inject_fault)
    report = verify.report_obj(
        checks, config={"N": cfg.N, "K": cfg.K, "G": cfg.G}
    )
    print(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_OK if all(c.ok for c in checks) else EXIT_FAIL


def cmd_compare(cfg: RunConfig) -> int:
    n = cfg.n
    assert n is not None
    if n < 1:
        raise UsageError("n must be at least 1")
    methods = ["cutjoin", "closed"]
    if n <= 5:
        methods.insert(0, "oracle")
    else:
        print(f"note: oracle skipped for n={n} > 5", file=sys.stderr)
    rows = []
    disagreements = 0
    for alpha in partitions_of(n):
        for g in range(cfg.genus_max + 1):
            values = {}
            for method in methods:
                if method == "closed" and g > 1:
                    continue
                values[method] = _count_by(method, alpha, g, cfg)
            agree = len(set(values.values())) == 1
            if not agree:
                disagreements += 1
            row = {"alpha": alpha, "g": g}
            for method in methods:
                row[method] = values.get(method, "")
            row["agree"] = "yes" if agree else "NO"
            rows.append(row)
    _emit(rows, ["alpha", "g"] + methods + ["agree"], cfg.fmt)
    return EXIT_OK if disagreements == 0 else EXIT_FAIL


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_USAGE if err.code not in (0, None) else EXIT_OK
    try:
        cfg = _config(args)
        if cfg.command == "count":
            return cmd_count(cfg)
        if cfg.command == "table":
            return cmd_table(cfg)
        if cfg.command == "verify":
            return cmd_verify(cfg)
        if cfg.command == "compare":
            return cmd_compare(cfg)
        raise UsageError(f"unknown command {cfg.command!r}")
    except (UsageError, SizeLimitExceeded, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
