"""Command-line front door for the trochoid mill.

Subcommands: ``plot`` a single rig's trace to SVG/CSV, ``classify`` a rig
to a JSON curve tag, ``verify`` the library's property suites, ``family``
a slide-perturbation sweep to SVG, ``linear`` the straight-rail rig, and
``serve`` the live control service.

Frequencies on the command line are integers or ``p/q`` fraction strings;
decimal text is rejected because closure and rolling decisions need exact
ratios.  Lengths accept decimals (``2.5``) and are parsed exactly.

Exit codes: 0 success, 1 verification failure, 2 bad flags.  Set the
``TROCHOID_MILL_LOG`` environment variable to a level name (``debug``,
``info``, ...) to enable logging.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from fractions import Fraction
from typing import List, Optional, Tuple

from trochoid_mill.kinematics import Frame, Polarization, Rig, as_frequency, classify
from trochoid_mill.linear import LinearRig
from trochoid_mill.render import to_csv, to_svg, write_svg, write_trace_csv
from trochoid_mill.sliding import SlideMethod
from trochoid_mill.traces import FamilySpec, Trace, sample_linear, sample_trace, sweep_family
from trochoid_mill.verify import SUITES, run_all
from trochoid_mill.wire import curve_class_to_wire

log = logging.getLogger("trochoid_mill.cli")


def frequency_arg(text: str) -> Fraction:
    return as_frequency(text)


def length_arg(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if value < 0:
        raise argparse.ArgumentTypeError(f"length must be >= 0, got {text}")
    return value


def steps_arg(text: str) -> Tuple[Fraction, ...]:
    parts = [piece.strip() for piece in text.split(",")]
    if not any(parts):
        raise argparse.ArgumentTypeError("empty steps list")
    try:
        return tuple(Fraction(piece) for piece in parts if piece)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad step list {text!r}") from exc


def _add_rig_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--a", type=length_arg, required=True, help="center offset of the pen tablet")
    parser.add_argument("--b", type=length_arg, required=True, help="pen radius on the tablet")
    parser.add_argument("--omega-table", type=frequency_arg, required=True, metavar="P/Q",
                        help="turntable frequency (rad/s), integer or fraction")
    parser.add_argument("--omega-pen", type=frequency_arg, required=True, metavar="P/Q",
                        help="tablet frequency (rad/s), integer or fraction")
    parser.add_argument("--polarization", choices=["co", "anti"], required=True,
                        help="tablet spin sense relative to the turntable")
    parser.add_argument("--phase-table", type=float, default=0.0)
    parser.add_argument("--phase-pen", type=float, default=0.0)


def _rig_from_args(args: argparse.Namespace) -> Rig:
    return Rig(
        a=args.a,
        b=args.b,
        omega_table=args.omega_table,
        omega_pen=args.omega_pen,
        polarization=Polarization(args.polarization),
        phase_table=args.phase_table,
        phase_pen=args.phase_pen,
    )


def _frame_from_args(args: argparse.Namespace) -> Frame:
    return Frame.TURNTABLE if args.frame == "table" else Frame.LAB


def _emit_traces(traces: List[Trace], args: argparse.Namespace) -> int:
    if args.format == "csv":
        if len(traces) != 1:
            raise ValueError("csv output holds exactly one trace; use svg for sweeps")
        if args.out:
            path = write_trace_csv(traces[0], args.out)
            log.info("wrote %s", path)
        else:
            sys.stdout.write(to_csv(traces[0]))
    else:
        if args.out:
            write_svg(traces, args.out)
            log.info("wrote %s", args.out)
        else:
            sys.stdout.write(to_svg(traces))
    return 0


def _cmd_plot(args: argparse.Namespace) -> int:
    rig = _rig_from_args(args)
    trace = sample_trace(rig, _frame_from_args(args), args.samples)
    return _emit_traces([trace], args)


def _cmd_classify(args: argparse.Namespace) -> int:
    curve = classify(_rig_from_args(args))
    print(json.dumps(curve_class_to_wire(curve), separators=(",", ":")))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    results = run_all(args.seed, args.suite or None)
    width = max(len(result.name) for result in results)
    all_passed = True
    for result in results:
        verdict = "PASS" if result.passed else "FAIL"
        all_passed = all_passed and result.passed
        line = (
            f"{result.name:<{width}}  {verdict}  cases={result.cases}"
            f" failures={result.failures} worst={result.worst:.3e}"
        )
        if result.note:
            line += f"  ({result.note})"
        print(line)
    print("all suites passed" if all_passed else "SUITE FAILURES", file=sys.stderr)
    return 0 if all_passed else 1


def _cmd_family(args: argparse.Namespace) -> int:
    spec = FamilySpec(
        base=_rig_from_args(args),
        method=SlideMethod(args.method),
        steps=args.steps,
    )
    traces = sweep_family(spec, _frame_from_args(args), args.samples)
    return _emit_traces(traces, args)


def _cmd_linear(args: argparse.Namespace) -> int:
    rig = LinearRig(r=args.r, R=args.R, omega=args.omega_pen)
    trace = sample_linear(rig, args.t_end, args.samples)
    return _emit_traces([trace], args)


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from trochoid_mill.service import create_app

    uvicorn.run(create_app(), host="127.0.0.1", port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trochoid-mill",
        description="Plot, classify and verify curves from the two-turntable drawing machine.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    plot = sub.add_parser("plot", help="sample one rig over a closure period and export it")
    _add_rig_flags(plot)
    plot.add_argument("--frame", choices=["table", "lab"], default="table")
    plot.add_argument("--samples", type=int, default=4096)
    plot.add_argument("--out", default=None, metavar="FILE")
    plot.add_argument("--format", choices=["svg", "csv"], default="svg")
    plot.set_defaults(handler=_cmd_plot)

    cls = sub.add_parser("classify", help="print the rig's curve class as JSON")
    _add_rig_flags(cls)
    cls.set_defaults(handler=_cmd_classify)

    verify = sub.add_parser("verify", help="run the randomized property suites")
    verify.add_argument("--seed", type=int, default=42)
    verify.add_argument("--suite", action="append", choices=sorted(SUITES),
                        help="run only this suite (repeatable)")
    verify.set_defaults(handler=_cmd_verify)

    family = sub.add_parser("family", help="sweep slide perturbations and export the overlay")
    _add_rig_flags(family)
    family.add_argument("--method", choices=["stcp", "stcf"], required=True)
    family.add_argument("--steps", type=steps_arg, required=True, metavar="V1,V2,...",
                        help="signed perturbation magnitudes; 0 keeps the base rig")
    family.add_argument("--frame", choices=["table", "lab"], default="table")
    family.add_argument("--samples", type=int, default=2048)
    family.add_argument("--out", default=None, metavar="FILE")
    family.add_argument("--format", choices=["svg"], default="svg")
    family.set_defaults(handler=_cmd_family)

    linear = sub.add_parser("linear", help="sample the straight-rail rig")
    linear.add_argument("--r", type=length_arg, required=True, help="axle speed / omega")
    linear.add_argument("--R", type=length_arg, required=True, help="wheel (pen) radius")
    linear.add_argument("--omega-pen", type=frequency_arg, required=True, metavar="P/Q",
                        help="wheel spin frequency (rad/s)")
    linear.add_argument("--t-end", type=float, required=True)
    linear.add_argument("--samples", type=int, default=1024)
    linear.add_argument("--out", default=None, metavar="FILE")
    linear.add_argument("--format", choices=["svg", "csv"], default="svg")
    linear.set_defaults(handler=_cmd_linear)

    serve = sub.add_parser("serve", help="start the live control service")
    serve.add_argument("--port", type=int, default=7420)
    serve.set_defaults(handler=_cmd_serve)

    return parser


def _configure_logging() -> None:
    level_name = os.environ.get("TROCHOID_MILL_LOG")
    if level_name:
        level = getattr(logging, level_name.upper(), None)
        if isinstance(level, int):
            logging.basicConfig(level=level)


def main(argv: Optional[List[str]] = None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
