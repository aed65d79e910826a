"""Command-line front end for the estimators, censuses and the renderer.

Exit codes: 0 on success, 2 on parameter errors (including unknown flags),
1 when a check requested with --assert fails.
"""

from __future__ import annotations

import argparse
import json
import sys

from .experiments import (
    ExperimentConfig,
    ExperimentResult,
    ModelInvariantError,
    Observable,
    ergodic_average,
    escape_probability,
    level_census,
    loop_census,
    sign_mean_experiment,
    slope_experiment,
    write_result,
)
from .fields import GeneratorSpec, Params
from .heights import HeightOracle
from .render import MAX_WINDOW, render_ppm
from .tracer import level, trace


class CheckFailed(Exception):
    """An --assert check did not hold."""


def _build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--p", type=float, default=0.5, help="horizontal-line +1 probability")
    shared.add_argument("--q", type=float, default=0.5, help="vertical-line +1 probability")
    shared.add_argument("--seed", type=int, default=0, help="base seed; trial t uses seed+t")
    shared.add_argument("--trials", type=int, default=100)
    shared.add_argument("--window", type=int, default=100, help="window half-width")
    shared.add_argument("--radius", type=int, default=1000, help="escape radius (sup-norm)")
    shared.add_argument("--max-steps", type=int, default=1_000_000)
    shared.add_argument("--epsilon", type=float, default=0.2, help="cone half-width / slope tolerance")
    shared.add_argument("--gen", choices=("iid", "markov"), default="iid")
    shared.add_argument("--flip-up", type=float, default=0.5, help="markov: P(-1 -> +1), both axes")
    shared.add_argument("--flip-down", type=float, default=0.5, help="markov: P(+1 -> -1), both axes")
    shared.add_argument("--format", choices=("json", "csv"), default="json", dest="fmt")
    shared.add_argument("--out", default=None, help="output path (default: stdout)")
    shared.add_argument(
        "--assert", dest="check", action="store_true", help="verify the command's invariant checks"
    )

    parser = argparse.ArgumentParser(
        prog="cornerperc",
        description="Corner percolation laboratory: deterministic simulations and Monte Carlo experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("render", parents=[shared], help="write a height-colored PPM image")
    p_trace = sub.add_parser("trace", parents=[shared], help="trace one component and summarize it")
    p_trace.add_argument("--start", type=int, nargs=2, default=(0, 0), metavar=("X", "Y"))
    p_escape = sub.add_parser("escape", parents=[shared], help="escape-probability estimate")
    p_escape.add_argument("--side", choices=("both", "forward", "backward"), default="both")
    sub.add_parser("slope", parents=[shared], help="empirical slope vs the asymptotic formula")
    sub.add_parser("signs", parents=[shared], help="edge-sign means across configurations")
    p_loops = sub.add_parser("loops", parents=[shared], help="cycle-length census")
    p_loops.add_argument("--stride", type=int, default=None, help="grid spacing of start points")
    sub.add_parser("levels", parents=[shared], help="levels of window-crossing components")
    p_erg = sub.add_parser("ergodic", parents=[shared], help="spatial ergodic average of an observable")
    p_erg.add_argument(
        "--observable",
        choices=tuple(o.value for o in Observable),
        default=Observable.VERTICAL_EDGE_ORIGIN.value,
    )
    return parser


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    gen = (
        GeneratorSpec.markov(args.flip_up, args.flip_down)
        if args.gen == "markov"
        else GeneratorSpec.iid()
    )
    return ExperimentConfig(
        params=Params(args.p, args.q),
        gen=gen,
        seed_base=args.seed,
        trials=args.trials,
        escape_radius=args.radius,
        max_steps=args.max_steps,
        window=args.window,
        epsilon=args.epsilon,
        output_path=args.out,
        fmt=args.fmt,
    )


def _emit(data: bytes, out: str | None) -> None:
    if out:
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)


def _emit_result(result: ExperimentResult, out: str | None) -> None:
    data = write_result(result, path=None)
    _emit(data if data.endswith(b"\n") else data + b"\n", out)


def _check_close(name: str, value: float, target: float, tol: float) -> None:
    if abs(value - target) > tol:
        raise CheckFailed(f"{name}: |{value:.6g} - {target:.6g}| > {tol:.6g}")


def _run(args: argparse.Namespace) -> int:
    ec = _config_from_args(args)

    if args.command == "render":
        if ec.window > MAX_WINDOW:
            raise ValueError(f"window must be <= {MAX_WINDOW} for rendering")
        data = render_ppm(ec.configuration(0), ec.window)
        if args.check and render_ppm(ec.configuration(0), ec.window) != data:
            raise CheckFailed("render is not reproducible")
        _emit(data, args.out)
        return 0

    if args.command == "trace":
        cfg = ec.configuration(0)
        start = tuple(args.start)
        t = trace(cfg, start, ec.max_steps, ec.escape_radius)
        summary = {
            "start": list(start),
            "status": t.status.value,
            "forward_status": t.forward_status.value,
            "backward_status": t.backward_status.value,
            "forward_steps": t.forward_steps,
            "backward_steps": t.backward_steps,
            "cycle_length": t.cycle_length,
            "level": level(HeightOracle(cfg), t),
            "config": ec.to_dict(),
        }
        if args.check and start == (0, 0) and summary["level"] not in (0, -1):
            raise CheckFailed(f"origin level {summary['level']} outside {{0, -1}}")
        _emit((json.dumps(summary, indent=2) + "\n").encode(), args.out)
        return 0

    if args.command == "escape":
        result = escape_probability(ec, side=args.side)
        if args.check:
            rerun = escape_probability(ec, side=args.side)
            if write_result(rerun, path=None) != write_result(result, path=None):
                raise CheckFailed("escape estimate is not reproducible")
    elif args.command == "slope":
        result = slope_experiment(ec)
        if args.check:
            if result.estimate is None:
                raise CheckFailed("no escaped traces to measure a slope on")
            if result.estimate < 0.9:
                raise CheckFailed(f"only {result.estimate:.3f} of escapers within tolerance")
    elif args.command == "signs":
        result = sign_mean_experiment(ec)
        if args.check:
            d = result.details
            tol0 = 2.5 * max(d["ci95_e0"], 1e-9)
            tol1 = 2.5 * max(d["ci95_e1"], 1e-9)
            _check_close("mean sign(E0)", d["mean_sign_e0"], d["expected_e0"], tol0)
            _check_close("mean sign(E1)", d["mean_sign_e1"], d["expected_e1"], tol1)
    elif args.command == "loops":
        result = loop_census(ec, stride=args.stride)
        # the census itself raises ModelInvariantError on a mod-8 violation
    elif args.command == "levels":
        result = level_census(ec)
        if args.check:
            t = trace(ec.configuration(0), (0, 0), ec.max_steps, ec.escape_radius)
            lv = level(HeightOracle(ec.configuration(0)), t)
            if lv not in (0, -1):
                raise CheckFailed(f"origin level {lv} outside {{0, -1}}")
    elif args.command == "ergodic":
        obs = Observable(args.observable)
        result = ergodic_average(ec, obs)
        if args.check and "expected" in result.details:
            _check_close("ergodic average", result.estimate, result.details["expected"], 0.05)
    else:  # pragma: no cover - argparse enforces the choices
        raise ValueError(f"unknown command {args.command}")

    _emit_result(result, args.out)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args)
    except (CheckFailed, ModelInvariantError) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:  # console-script hook
    raise SystemExit(main())
