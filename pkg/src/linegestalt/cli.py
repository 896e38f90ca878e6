"""Command line: ``linegestalt detect`` and ``linegestalt calibrate``."""
from __future__ import annotations

import argparse
import json
import math
import sys

from .chains import DEFAULT_K_MAX
from .estimator import ALL_KINDS, GestaltDetector
from .formats import parse_segments, write_report
from .geometry import ImageDomain
from .nfa import Params
from .simulation import H0Config, calibrate, write_calibration
from .svg import render_svg
from .validation import bounding_domain, segments_to_array

TYPE_ALIASES = {
    "good-continuations": "good_continuation",
    "good_continuation": "good_continuation",
    "gc": "good_continuation",
    "alignments": "alignment",
    "alignment": "alignment",
    "bars": "bar",
    "bar": "bar",
}


def _types(value):
    kinds = set()
    for token in value.split(","):
        token = token.strip().lower()
        if token == "all":
            kinds.update(ALL_KINDS)
        elif token in TYPE_ALIASES:
            kinds.add(TYPE_ALIASES[token])
        else:
            raise argparse.ArgumentTypeError(f"unknown gestalt type {token!r}")
    return tuple(k for k in ALL_KINDS if k in kinds)


def _add_param_flags(p):
    g = p.add_argument_group("detector parameters (angles in degrees)")
    g.add_argument("--rho", type=float, help="max gap in pixels [min(10, ceil(0.1*max(m,n)))]")
    g.add_argument("--theta-s", type=float, default=150.0, help="good continuation angle ceiling [150]")
    g.add_argument("--lambda", dest="lam", type=float, default=2.0, help="tip margin in pixels [2]")
    g.add_argument("--epsilon", type=float, default=1.0, help="NFA threshold [1]")
    g.add_argument("--align-theta", type=float, default=3.0, help="alignment angle ceiling [3]")
    g.add_argument("--bar-tol", type=float, default=3.0, help="bar deviation from anti-parallel [3]")
    g.add_argument("--k-max", type=int, default=DEFAULT_K_MAX, help="longest chain explored [64]")
    g.add_argument("--print-config", action="store_true", help="echo the effective configuration")


def _params(args, domain):
    return Params.for_domain(
        domain, rho=args.rho, theta_s=math.radians(args.theta_s), lam=args.lam,
        epsilon=args.epsilon, align_theta=math.radians(args.align_theta),
        bar_theta_tol=math.radians(args.bar_tol),
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="linegestalt",
        description="Group line segments into good continuations, alignments and bars.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("detect", help="detect gestalts in a segment file")
    d.add_argument("input", help="segment file: x1 y1 x2 y2 [extra fields] per line")
    d.add_argument("-m", "--width", type=int, help="image width in pixels")
    d.add_argument("-n", "--height", type=int, help="image height in pixels")
    d.add_argument("--types", type=_types, default=ALL_KINDS,
                   help="comma list of good-continuations, alignments, bars [all]")
    d.add_argument("--report", help="write the JSON report here ('-' for stdout)")
    d.add_argument("--svg", help="write the SVG drawing here")
    _add_param_flags(d)

    c = sub.add_parser("calibrate", help="count detections on null-model samples")
    c.add_argument("-N", "--segments", type=int, required=True, help="segments per sample")
    c.add_argument("--trials", type=int, required=True)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("-m", "--width", type=int, default=512)
    c.add_argument("-n", "--height", type=int, default=512)
    c.add_argument("--output", help="write the JSON summary here [stdout]")
    _add_param_flags(c)
    return parser


def _fail(msg):
    print(f"linegestalt: error: {msg}", file=sys.stderr)
    return 1


def run_detect(args):
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        return _fail(f"cannot read {args.input}: {exc.strerror}")
    segments, diagnostics = parse_segments(text)
    for diag in diagnostics:
        print(f"{args.input}: {diag}", file=sys.stderr)
    if not segments:
        return _fail(f"no valid segments in {args.input}")
    if (args.width is None) != (args.height is None):
        return _fail("give both --width and --height, or neither")

    X = segments_to_array(segments)
    try:
        if args.width is None:
            domain = bounding_domain(X)
            print(f"linegestalt: warning: image size not given; using tip bounding box "
                  f"{domain.m}x{domain.n}", file=sys.stderr)
        else:
            domain = ImageDomain(args.width, args.height)
        params = _params(args, domain)
        est = GestaltDetector(
            image_size=(domain.m, domain.n), rho=params.rho, theta_s=params.theta_s,
            lam=params.lam, epsilon=params.epsilon, align_theta=params.align_theta,
            bar_theta_tol=params.bar_theta_tol, k_max=args.k_max, kinds=args.types,
        ).fit(X)
    except ValueError as exc:
        return _fail(str(exc))

    out = sys.stderr if args.report == "-" else sys.stdout
    if args.print_config:
        print(json.dumps({"image": {"width": domain.m, "height": domain.n}, **est.config()},
                         indent=2), file=out)
    report = est.report()
    text = write_report(report)
    if args.report == "-":
        sys.stdout.write(text)
    elif args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_svg(est.segments_, report))
    for kind in ALL_KINDS:
        if kind in est.config()["kinds"]:
            print(f"{kind}: {len(report.detections[kind])}", file=out)
    print(f"residual: {len(report.residuals)}", file=out)
    return 0


def run_calibrate(args):
    try:
        domain = ImageDomain(args.width, args.height)
        config = H0Config(args.segments, domain, args.trials, args.seed)
        params = _params(args, domain)
    except ValueError as exc:
        return _fail(str(exc))
    if args.print_config:
        print(json.dumps({"N": config.N, "trials": config.trials, "seed": config.seed,
                          **params.as_dict(), "k_max": args.k_max}, indent=2), file=sys.stderr)
    text = write_calibration(calibrate(config, params, args.k_max))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "detect":
        return run_detect(args)
    return run_calibrate(args)


if __name__ == "__main__":
    sys.exit(main())
