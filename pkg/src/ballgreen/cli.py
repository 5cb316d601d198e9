"""Command-line entry point: point evaluation, grid export and the verification suite.

    ballgreen eval   --dim 3 --z 0.5,0,0 [--moment 0,1,0] --x 0,0,0.8 [--radius R]
    ballgreen grid   --dim 2 --z 0.5,0 --resolution 41 [--lo -1,-1 --hi 1,1] [--format csv]
    ballgreen verify --seed 42 --dims 1,2,3,4,5,7

Vectors are comma-separated; one with a leading minus sign must be passed
as --z=-0.5,0 so that it is not read as an option.

Exit codes: 0 success, 1 verification failure, 2 invalid input, 3 evaluation
error (source coincidence, centred dipole).
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import sys

import numpy as np

from .geometry import BallSpec, CenteredSourceError, GreenError, SourceCoincidenceError
from .greens import Dipole, Form, greens_eeg_radius, greens_poisson_radius
from .oracle import QuadratureConfig
from .suite import DEFAULT_DIMS, run_suite

EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_EVAL = 3


class UsageError(Exception):
    pass


def _fmt(v: float) -> str:
    if not math.isfinite(v):
        return "null"
    text = format(v, ".17g")
    # keep integral values recognisable as floats
    return text if any(ch in text for ch in ".en") else text + ".0"


def dumps(obj) -> str:
    """JSON with every float written to 17 significant digits."""
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def parse_vector(text: str, dim: int, what: str) -> np.ndarray:
    try:
        vals = [float(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"--{what}: expected comma-separated numbers, got {text!r}") from None
    if len(vals) != dim:
        raise UsageError(f"--{what}: expected {dim} components, got {len(vals)}")
    if not all(math.isfinite(v) for v in vals):
        raise UsageError(f"--{what}: components must be finite")
    return np.array(vals)


def _ball(args) -> BallSpec:
    try:
        return BallSpec(args.dim, args.radius)
    except GreenError as exc:
        raise UsageError(str(exc)) from None


def _source_and_moment(args, ball):
    z = parse_vector(args.z, ball.dim, "z")
    if np.linalg.norm(z) >= ball.radius:
        raise UsageError("--z: source must lie strictly inside the ball")
    moment = None
    if args.moment is not None:
        moment = parse_vector(args.moment, ball.dim, "moment")
        if not np.any(moment):
            raise UsageError("--moment: dipole moment must be nonzero")
    return z, moment


def _evaluate(ball, z, moment, x, form):
    if moment is None:
        return greens_poisson_radius(ball, z, x)
    return greens_eeg_radius(ball, Dipole(z, moment), x, form)


def _header(ball, z, moment) -> dict:
    rec = {
        "problem": "poisson" if moment is None else "eeg",
        "dim": ball.dim,
        "radius": ball.radius,
        "z": z.tolist(),
    }
    if moment is not None:
        rec["moment"] = moment.tolist()
    return rec


def eval_cmd(args, out) -> int:
    ball = _ball(args)
    z, moment = _source_and_moment(args, ball)
    x = parse_vector(args.x, ball.dim, "x")
    if np.linalg.norm(x) > ball.radius * (1.0 + 1e-12):
        raise UsageError("--x: evaluation point lies outside the closed ball")
    res = _evaluate(ball, z, moment, x, args.form)
    rec = _header(ball, z, moment)
    rec.update(
        x=x.tolist(),
        value=res.value,
        method=res.method.value,
        flags=sorted(f.value for f in res.flags),
    )
    out.write(dumps(rec) + "\n")
    return 0


def _axes(args, ball):
    d = ball.dim
    if d > 3:
        raise UsageError("grid export supports --dim 1, 2 or 3")
    try:
        res = [int(t) for t in args.resolution.split(",")]
    except ValueError:
        raise UsageError(f"--resolution: expected integers, got {args.resolution!r}") from None
    if len(res) == 1:
        res = res * d
    if len(res) != d or min(res) < 2:
        raise UsageError("--resolution: need one value >= 2 (or one per axis)")
    lo = parse_vector(args.lo, d, "lo") if args.lo else np.full(d, -ball.radius)
    hi = parse_vector(args.hi, d, "hi") if args.hi else np.full(d, ball.radius)
    if np.any(hi <= lo):
        raise UsageError("grid box needs lo < hi on every axis")
    return [np.linspace(a, b, m) for a, b, m in zip(lo, hi, res)]


def grid_cmd(args, out) -> int:
    ball = _ball(args)
    z, moment = _source_and_moment(args, ball)
    axes = _axes(args, ball)
    if moment is not None and np.linalg.norm(z) < 1e-12 * ball.radius:
        raise CenteredSourceError("EEG Green's function is undefined for a dipole at the centre")
    rows = []
    for node in itertools.product(*axes):
        x = np.array(node)
        value, flags = None, []
        if np.linalg.norm(x) <= ball.radius * (1.0 + 1e-12):
            try:
                res = _evaluate(ball, z, moment, x, args.form)
                value, flags = res.value, sorted(f.value for f in res.flags)
            except SourceCoincidenceError:
                flags = ["near_source_singularity"]
        rows.append((x, value, flags))

    if args.format == "json":
        rec = _header(ball, z, moment)
        rec["nodes"] = [{"x": x.tolist(), "value": v, "flags": f} for x, v, f in rows]
        out.write(dumps(rec) + "\n")
        return 0
    cols = [f"x{i + 1}" for i in range(ball.dim)]
    out.write(",".join(cols + ["value", "flags"]) + "\n")
    for x, v, f in rows:
        fields = [_fmt(c) for c in x] + ["" if v is None else _fmt(v), ";".join(f)]
        out.write(",".join(fields) + "\n")
    return 0


def _dims(text: str):
    text = text.strip()
    if not text:
        return []
    try:
        dims = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"--dims: expected comma-separated integers, got {text!r}") from None
    if any(not 1 <= n <= 10 for n in dims):
        raise UsageError("--dims: dimensions must lie in 1..10")
    return dims


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be positive and finite: {text!r}")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return v


def verify_cmd(args, out) -> int:
    dims = _dims(args.dims)
    cfg = QuadratureConfig(args.abs_tol, args.rel_tol, args.max_subdivisions)
    report = run_suite(args.seed, dims, cfg)
    out.write(dumps(report.to_dict()) + "\n")
    return 0 if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ballgreen", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def problem_flags(p):
        p.add_argument("--dim", type=int, required=True, help="space dimension n")
        p.add_argument("--radius", type=float, default=1.0, help="ball radius R (default 1)")
        p.add_argument("--z", required=True, help="source position, comma-separated")
        p.add_argument("--moment", help="dipole moment; selects the EEG problem")
        p.add_argument("--form", choices=[f.value for f in Form], default="auto",
                       help="algebraic form of the EEG formula")

    p = sub.add_parser("eval", help="evaluate at one point, print a JSON record")
    problem_flags(p)
    p.add_argument("--x", required=True, help="evaluation point, comma-separated")
    p.set_defaults(func=eval_cmd)

    p = sub.add_parser("grid", help="evaluate on a tensor grid (dim <= 3)")
    problem_flags(p)
    p.add_argument("--resolution", default="21", help="nodes per axis, one value or one per axis")
    p.add_argument("--lo", help="lower corner of the box (default -R on every axis)")
    p.add_argument("--hi", help="upper corner of the box (default R on every axis)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=grid_cmd)

    p = sub.add_parser("verify", help="run the verification suite, print a JSON report")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--dims", default=",".join(map(str, DEFAULT_DIMS)))
    p.add_argument("--abs-tol", type=_positive_float, default=QuadratureConfig.abs_tol)
    p.add_argument("--rel-tol", type=_positive_float, default=QuadratureConfig.rel_tol)
    p.add_argument("--max-subdivisions", type=_positive_int, default=QuadratureConfig.max_subdivisions)
    p.set_defaults(func=verify_cmd)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (SourceCoincidenceError, CenteredSourceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EVAL
    except (UsageError, GreenError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
