"""Command-line front end: compute values, probe bodies, run verification suites.

Three subcommands::

    nctheta compute --graph G.json --weight W.json [--form NAME] [--tol X]
    nctheta verify  --suite NAME [--n N] [--seed S] [--trials T]
                    [--blocks dAxdY,...] [--summary]
    nctheta body    --graph G.json --weight W.json --mode {member,support,psi-support}

Exit codes are stable: 0 for a finished computation or an all-green suite,
1 for usage and input errors (bad flags, malformed files, violated graph
invariants, unknown suite names), 2 for numerical failure (a solver that did
not converge, or a suite with failing checks).

The default solver tolerance may be overridden through the ``NCTHETA_TOL``
environment variable; it is read once at startup and then passed explicitly
to every computation.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Optional, Sequence

from . import bodies, io, suites
from .errors import (GraphInvariantError, NcthetaError, PreconditionError,
                     SolverFailure)
from .theta import (MAX_FORMS, MIN_FORMS, SOLVER_TOL, theta, theta_dual,
                    theta_max_forms)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2

FORM_CHOICES = MIN_FORMS + MAX_FORMS + ("max_T",)
TOL_ENV_VAR = "NCTHETA_TOL"

BODY_MODES = ("member", "support", "psi-support")


def _tolerance_from_env() -> float:
    """Default tolerance, honouring the environment override."""
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None:
        return SOLVER_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise PreconditionError(
            f"{TOL_ENV_VAR} must be a number, got {raw!r}") from None
    if not tol > 0.0:
        raise PreconditionError(f"{TOL_ENV_VAR} must be positive, got {raw}")
    return tol


def parse_blocks(spec: str) -> tuple[tuple[int, int], ...]:
    """Parse a comma-separated block layout such as ``"1x2,2x1"``."""
    blocks = []
    for part in spec.split(","):
        m = re.fullmatch(r"([0-9]+)x([0-9]+)", part.strip())
        if m is None:
            raise PreconditionError(
                f"bad block spec {part.strip()!r}; expected dAxdY pairs like 1x2,2x1")
        da, dy = int(m.group(1)), int(m.group(2))
        if da < 1 or dy < 1:
            raise PreconditionError(f"block dimensions must be positive, got {part.strip()!r}")
        blocks.append((da, dy))
    return tuple(blocks)


def _compute_result(g, w, form: str, tol: float):
    if form == "max_T":
        return theta_dual(g, w, tol=tol)
    if form in MAX_FORMS:
        return theta_max_forms(g, w, form, tol=tol)
    return theta(g, w, form=form, tol=tol)


def cmd_compute(args) -> int:
    g = io.load_graph(args.graph)
    w = io.load_weight(args.weight)
    res = _compute_result(g, w, args.form, args.tol)
    print(io.result_json(res))
    return EXIT_OK


def cmd_body(args) -> int:
    g = io.load_graph(args.graph)
    w = io.load_weight(args.weight)
    if args.mode == "member":
        res = bodies.theta_body_membership(g, w, tol=args.tol)
        out = {"mode": "member", "member": bool(res.member),
               "margin": float(res.margin)}
    elif args.mode == "support":
        sup = bodies.antiblocker_support(g, w, tol=args.tol)
        out = {"mode": "support", "value": float(sup.value)}
    else:
        sup = bodies.theta_psi_support(g, w, tol=args.tol)
        out = {"mode": "psi-support", "value": float(sup.value)}
    print(json.dumps(out))
    return EXIT_OK


def _summary_lines(report: suites.SuiteReport) -> list[str]:
    """Human-readable table for --summary (the default output is diffable)."""
    width = max(len(c.claim) for c in report.checks)
    head = f"suite={report.suite} seed={report.seed} n={report.n} trials={report.trials}"
    if report.blocks is not None:
        head += " blocks=" + ",".join(f"{a}x{b}" for a, b in report.blocks)
    lines = [head,
             f"{'check':<{width}}  {'residual':>10}  {'tolerance':>9}  status",
             "-" * (width + 33)]
    for c in report.checks:
        lines.append(f"{c.claim:<{width}}  {c.residual:>+10.3e}  {c.tolerance:>9.1e}  "
                     f"{'pass' if c.passed else 'FAIL'}")
    failed = sum(1 for c in report.checks if not c.passed)
    verdict = "PASS" if failed == 0 else "FAIL"
    lines.append(f"result={verdict} ({len(report.checks)} checks, {failed} failed)")
    if report.seconds is not None:
        lines.append(f"# wall {report.seconds:.2f}s")
    return lines


def cmd_verify(args) -> int:
    blocks = parse_blocks(args.blocks) if args.blocks is not None else None
    report = suites.run_suite(args.suite, n=args.n, seed=args.seed,
                              trials=args.trials, tol=args.tol, blocks=blocks)
    lines = _summary_lines(report) if args.summary else report.to_lines()
    print("\n".join(lines))
    if all(c.passed for c in report.checks):
        return EXIT_OK
    return EXIT_NUMERICAL


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on usage errors; the contract wants 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser(default_tol: float) -> argparse.ArgumentParser:
    parser = _Parser(prog="nctheta",
                     description="Weighted theta of non-commutative graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compute", help="compute the weighted value of a graph")
    comp.add_argument("--graph", required=True, help="graph JSON file")
    comp.add_argument("--weight", required=True, help="weight JSON file")
    comp.add_argument("--form", default="min_Y", choices=FORM_CHOICES,
                      help="which formulation to solve (default: min_Y)")
    comp.add_argument("--tol", type=float, default=default_tol,
                      help=f"solver tolerance (default {default_tol:g})")
    comp.set_defaults(func=cmd_compute)

    ver = sub.add_parser("verify", help="run a named verification suite")
    ver.add_argument("--suite", required=True, help="suite name")
    ver.add_argument("--n", type=int, default=None, help="instance dimension")
    ver.add_argument("--seed", type=int, default=suites.DEFAULT_SEED,
                     help=f"RNG seed (default {suites.DEFAULT_SEED})")
    ver.add_argument("--trials", type=int, default=None,
                     help="number of random trials")
    ver.add_argument("--blocks", default=None,
                     help="block layout dAxdY,... for the suites that take one")
    ver.add_argument("--tol", type=float, default=default_tol,
                     help=f"solver tolerance (default {default_tol:g})")
    ver.add_argument("--summary", action="store_true",
                     help="print a human table instead of the diffable report")
    ver.set_defaults(func=cmd_verify)

    body = sub.add_parser("body", help="membership and support queries")
    body.add_argument("--graph", required=True, help="graph JSON file")
    body.add_argument("--weight", required=True, help="weight JSON file")
    body.add_argument("--mode", required=True, choices=BODY_MODES,
                      help="member: is W in the body; support / psi-support: "
                           "maximize against W")
    body.add_argument("--tol", type=float, default=default_tol,
                      help=f"solver tolerance (default {default_tol:g})")
    body.set_defaults(func=cmd_body)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        default_tol = _tolerance_from_env()
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser = build_parser(default_tol)
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SolverFailure as exc:
        print(f"error: solver failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except GraphInvariantError as exc:
        print(f"error: graph invariant violated: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NcthetaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
