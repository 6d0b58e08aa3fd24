"""Command line front end.

Subcommands: zeros, converge, kernel-check, probe, eval.  Exit code 0 on
success, 1 when a verdict fails (a probe finds nothing, a ladder does not
decrease, an identity residual is out of tolerance), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import Optional

from .errors import GruenwaldError, UsageError
from .harness import (
    cli_converge,
    cli_eval,
    cli_kernel_check,
    cli_probe,
    cli_zeros,
    make_grid,
    parse_ladder,
)
from .reports import ExperimentConfig
from .series import DEFAULT_POLICY, TruncationPolicy


class _Parser(argparse.ArgumentParser):
    """argparse that reports bad flags as UsageError instead of exiting and
    accepts values such as '-5:5:1/97' that begin with a negative number."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d.*$")

    def error(self, message):
        raise UsageError(message)


def _add_policy_flags(sub) -> None:
    sub.add_argument(
        "--radius",
        type=float,
        default=None,
        help="truncation window half-width in node units",
    )
    sub.add_argument(
        "--tail-tol",
        type=float,
        default=None,
        help="acceptable truncation tail estimate",
    )
    sub.add_argument(
        "--min-nodes",
        type=int,
        default=None,
        help="minimum number of nodes kept in the window",
    )


def _policy_from(args) -> TruncationPolicy:
    radius = args.radius if args.radius is not None else DEFAULT_POLICY.radius
    tail = args.tail_tol if args.tail_tol is not None else DEFAULT_POLICY.tail_tolerance
    count = args.min_nodes if args.min_nodes is not None else DEFAULT_POLICY.min_nodes
    return TruncationPolicy(radius=radius, tail_tolerance=tail, min_nodes=count)


def _grid_step(spec: str) -> float:
    step_text = str(spec).split(":")[-1]
    if "/" in step_text:
        num_text, den_text = step_text.split("/", 1)
        return float(num_text) / float(den_text)
    return float(step_text)


def build_parser() -> _Parser:
    parser = _Parser(prog="gruenwald", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    zeros = subs.add_parser("zeros", help="write a node/derivative table")
    zeros.add_argument("--nu", type=float, required=True, help="order nu > -1")
    zeros.add_argument(
        "--kind", choices=("A", "B"), default="A", help="even (A) or odd (B) family"
    )
    zeros.add_argument("--count", type=int, default=10, help="number of zeros")
    zeros.add_argument("--out", default=None, help="output path (default stdout)")
    zeros.add_argument("--format", choices=("csv", "json"), default="csv")

    conv = subs.add_parser("converge", help="run a convergence ladder")
    conv.add_argument(
        "--experiment",
        choices=("theorem1", "theorem2-sinh"),
        default="theorem1",
    )
    conv.add_argument("--nu", type=float, default=None, help="order (theorem1)")
    conv.add_argument(
        "--tau-ladder", default="4,8,16,32,64", help="comma-separated taus"
    )
    conv.add_argument("--grid", default="-5:5:1/97", help="grid as min:max:step")
    conv.add_argument(
        "--target",
        default=None,
        help="target id (default gaussian; poisson-recip for theorem2-sinh)",
    )
    _add_policy_flags(conv)
    conv.add_argument("--out", default=None, help="output path (default stdout)")
    conv.add_argument("--format", choices=("csv", "json"), default="csv")

    kern = subs.add_parser(
        "kernel-check", help="audit the diagonal reproducing identity"
    )
    kern.add_argument("--tau", type=float, required=True)
    kern.add_argument(
        "--grid", default=None, help="grid as min:max:step (default 0, 0.5, 2)"
    )
    kern.add_argument(
        "--radius",
        type=float,
        default=None,
        help="node window half-width (default 4e6/tau)",
    )
    kern.add_argument("--out", default=None, help="output path (default stdout)")
    kern.add_argument("--format", choices=("csv", "json"), default="csv")

    probe = subs.add_parser("probe", help="run a negative-control probe")
    probe.add_argument(
        "experiment", choices=("wrong-operator", "cos-case", "dilation-failure")
    )
    probe.add_argument("--nu", type=float, default=None)
    probe.add_argument("--tau", type=float, default=None)
    probe.add_argument("--tau-ladder", default=None, help="comma-separated taus")
    probe.add_argument("--grid", default=None, help="grid as min:max:step")
    _add_policy_flags(probe)
    probe.add_argument("--out", default=None, help="output path (default stdout)")
    probe.add_argument("--format", choices=("csv", "json"), default="csv")

    ev = subs.add_parser("eval", help="evaluate one operator value")
    ev.add_argument("--nu", type=float, required=True)
    ev.add_argument("--tau", type=float, required=True)
    ev.add_argument("--x", type=float, required=True)
    ev.add_argument(
        "--which", choices=("G", "H"), default=None, help="operator (default by regime)"
    )
    ev.add_argument("--target", default="gaussian", help="catalog target id")
    ev.add_argument(
        "--samples", default=None, help="node,value CSV for custom-samples"
    )
    _add_policy_flags(ev)
    ev.add_argument("--out", default=None, help="output path (default stdout)")
    ev.add_argument("--format", choices=("csv", "json"), default="csv")

    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        sys.stdout.write("wrote %s\n" % out)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "zeros":
            _, text = cli_zeros(args.nu, args.kind, args.count, args.out, args.format)
            _emit(text, args.out)
            return 0
        if args.command == "converge":
            grid = make_grid(args.grid)
            target = args.target
            if target is None:
                target = (
                    "poisson-recip"
                    if args.experiment == "theorem2-sinh"
                    else "gaussian"
                )
            config = ExperimentConfig(
                experiment=args.experiment,
                nu=args.nu,
                tau_ladder=parse_ladder(args.tau_ladder),
                grid_min=float(grid[0]),
                grid_max=float(grid[-1]),
                grid_step=_grid_step(args.grid),
                policy=_policy_from(args),
                target=target,
                out=args.out,
                out_format=args.format,
            )
            report, text, code = cli_converge(config, grid)
            _emit(text, args.out)
            verdict = report.verdicts()
            sys.stdout.write(
                "verdict[%s]: %s\n"
                % (verdict["rule"], "pass" if verdict["pass"] else "fail")
            )
            if report.note:
                sys.stdout.write("note: %s\n" % report.note)
            return code
        if args.command == "kernel-check":
            grid = make_grid(args.grid) if args.grid is not None else None
            report, text, code = cli_kernel_check(
                args.tau,
                grid=grid,
                out=args.out,
                out_format=args.format,
                radius=args.radius,
            )
            _emit(text, args.out)
            sys.stdout.write("verdict: %s\n" % ("pass" if report.passed else "fail"))
            return code
        if args.command == "probe":
            ladder = parse_ladder(args.tau_ladder) if args.tau_ladder else None
            grid = make_grid(args.grid) if args.grid is not None else None
            report, text, code = cli_probe(
                args.experiment,
                nu=args.nu,
                tau=args.tau,
                tau_ladder=ladder,
                grid=grid,
                policy=_policy_from(args),
                out=args.out,
                out_format=args.format,
            )
            _emit(text, args.out)
            sys.stdout.write("verdict: %s\n" % ("pass" if report.passed else "fail"))
            if "note" in report.meta and report.meta["note"]:
                sys.stdout.write("note: %s\n" % report.meta["note"])
            return code
        if args.command == "eval":
            _, text, code = cli_eval(
                args.nu,
                args.tau,
                args.x,
                which=args.which,
                target=args.target,
                samples_path=args.samples,
                policy=_policy_from(args),
                out=args.out,
                out_format=args.format,
            )
            _emit(text, args.out)
            return code
        raise UsageError("unknown command %r" % (args.command,))
    except UsageError as exc:
        sys.stderr.write("usage error: %s\n" % exc)
        return 2
    except GruenwaldError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
