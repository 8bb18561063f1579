"""Command line entry point.

Exit status: 0 on success, 1 for a negative mathematical result (failed
verification, infeasible or undecided search), 2 for usage and file errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .model import (DimensionError, FormatError, parse_assignment, parse_instance,
                    serialize_assignment, serialize_instance)
from .oracle import GenConfig, OracleConfig, brute_force, conjecture_search, gen_instance, hard_instance
from .solvers import ROUTES, solve
from .verifier import verify


class UsageError(Exception):
    pass


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, data: bytes):
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _load_instance(path: str):
    try:
        return parse_instance(_read(path))
    except FormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    outcome = solve(inst, route=args.force_route)
    if outcome.status == "unsupported":
        raise UsageError(f"route {outcome.route}: {outcome.reason}")
    print(outcome.describe())
    if not outcome.solved:
        return 1
    _write(args.out, serialize_assignment(outcome.assignment))
    return 0


def cmd_verify(args) -> int:
    inst = _load_instance(args.instance)
    try:
        a = parse_assignment(_read(args.assignment))
    except FormatError as exc:
        raise UsageError(f"{args.assignment}: {exc}") from None
    try:
        report = verify(inst, a)
    except DimensionError as exc:
        raise UsageError(str(exc)) from None
    print(report.render())
    return 0 if report.ok else 1


def cmd_oracle(args) -> int:
    inst = _load_instance(args.instance)
    horizon = args.horizon or inst.horizon
    if horizon < inst.horizon:
        raise UsageError(f"--horizon {horizon} below instance horizon {inst.horizon}")
    res = brute_force(inst, OracleConfig(horizon=horizon, budget=args.budget))
    print(res.describe())
    if res.status == "solution":
        sys.stdout.write(serialize_assignment(res.assignment).decode())
        return 0
    return 1


def cmd_gen(args) -> int:
    try:
        cfg = GenConfig(args.seed, args.n, args.k, args.cols, args.universe)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(args.out, serialize_instance(gen_instance(cfg)))
    return 0


def cmd_search(args) -> int:
    if args.universe < args.k:
        raise UsageError(f"universe {args.universe} smaller than k={args.k}")
    if args.horizon is not None and args.horizon < args.n:
        raise UsageError("horizon below n")
    summary = conjecture_search(args.n, args.k, args.count, args.seed, args.universe,
                                horizon=args.horizon, threads=args.threads,
                                dump_dir=os.getcwd())
    print(summary.render())
    return 1 if summary.infeasible else 0


def cmd_hard(args) -> int:
    try:
        inst = hard_instance(args.n, args.k)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(args.out, serialize_instance(inst))
    return 0


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _unsigned(text: str) -> int:
    v = int(text)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gridfill")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("instance")
    p.add_argument("-o", "--out", required=True)
    p.add_argument("--force-route", choices=ROUTES)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check an assignment against an instance")
    p.add_argument("instance")
    p.add_argument("assignment")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive search")
    p.add_argument("instance")
    p.add_argument("--horizon", type=_positive)
    p.add_argument("--budget", type=int, default=0)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write a random instance")
    p.add_argument("--seed", type=_unsigned, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--cols", type=_positive, required=True)
    p.add_argument("--universe", type=_positive, required=True)
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("search", help="oracle over a batch of random instances")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--count", type=_positive, required=True)
    p.add_argument("--seed", type=_unsigned, required=True)
    p.add_argument("--universe", type=_positive, required=True)
    p.add_argument("--horizon", type=_positive)
    p.add_argument("--threads", type=_positive, default=1)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("hard", help="write the all-equal instance for k <= n")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("-o", "--out", required=True)
    p.set_defaults(func=cmd_hard)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"gridfill: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
