"""Command-line interface: generators, scans, tangency probes, experiments."""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .boxdim import union_circle_dim, union_wave_dim, projection_dim_scan
from .circles import Circle, annulus_intersection_samples, incidence_params, internal_tangency_point
from .clouds import WeightedCloud
from .curve import TWO_PI, Point3
from .experiments import (
    Artifacts,
    ConfigError,
    _emit_fit,
    build_cloud,
    load_config,
    parse_scale,
    parse_scales,
    run,
)
from .incidence import CircleIndex, circle_multiplicity, wave_multiplicity
from .rects import DEFAULT_TANGENCY_SCALE, is_tangent, rect_from_incident_pair


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help="seed for randomized steps")
    p.add_argument("--out", type=str, default=None, help="output file or directory")
    p.add_argument("--threads", type=int, default=1)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coneproj")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="emit a generated cloud as CSV")
    gen.add_argument("--type", required=True, choices=["cantor", "cone", "radius-ladder"])
    gen.add_argument("--ratio", type=float)
    gen.add_argument("--maps", type=int, default=2)
    gen.add_argument("--axes", type=str, default="x1")
    gen.add_argument("--depth", type=int)
    gen.add_argument("--n", type=int)
    gen.add_argument("--r-lo", type=float, default=0.5)
    gen.add_argument("--r-hi", type=float, default=2.0)
    for axis in ("x1", "x2", "r"):
        gen.add_argument(f"--frame-{axis}", type=str, default=None, metavar="LO,HI")
    _add_common(gen)

    proj = sub.add_parser("project", help="projection dimension scan over a theta grid")
    proj.add_argument("--cloud", required=True)
    proj.add_argument("--thetas", type=int, default=720)
    proj.add_argument("--scales", type=str, default="2^-4:2^-12")
    proj.add_argument("--curve", choices=["slant", "flat"], default="slant")
    _add_common(proj)

    box = sub.add_parser("boxdim", help="box dimension of a wave or circle union")
    box.add_argument("--cloud", required=True)
    box.add_argument("--mode", required=True, choices=["wave-union", "circle-union"])
    box.add_argument("--scales", type=str, default="2^-4:2^-12")
    box.add_argument("--arc", choices=["full", "upper"], default="full")
    _add_common(box)

    tan = sub.add_parser("tangency", help="tangency data for a circle pair")
    tan.add_argument("--circle1", required=True, metavar="CX,CY,R")
    tan.add_argument("--circle2", required=True, metavar="CX,CY,R")
    tan.add_argument("--delta", type=str, required=True)
    tan.add_argument("--samples", type=int, default=0, help="annulus samples to dump")
    _add_common(tan)

    inc = sub.add_parser("incidence", help="multiplicity queries against a cloud")
    inc.add_argument("--cloud", required=True)
    inc.add_argument("--delta", type=str, required=True)
    inc.add_argument("--family", choices=["circle", "wave"], default="circle")
    inc.add_argument("--query", action="append", default=[], metavar="X,Y")
    inc.add_argument("--query-file", type=str, default=None)
    _add_common(inc)

    exp = sub.add_parser("experiment", help="run a configured experiment")
    exp_sub = exp.add_subparsers(dest="action", required=True)
    exp_run = exp_sub.add_parser("run")
    exp_run.add_argument("config")
    exp_run.add_argument("--out", type=str, default=None, help="override output directory")
    exp_run.add_argument("--threads", type=int, default=None)

    return parser


def _cmd_gen(args) -> int:
    if args.out is None:
        raise ConfigError("gen requires --out")
    gspec = {"type": args.type}
    if args.type == "cantor":
        if args.ratio is None or args.depth is None:
            raise ConfigError("cantor generator needs --ratio and --depth")
        gspec.update(
            ratio=str(args.ratio), maps=str(args.maps), axes=args.axes, depth=str(args.depth)
        )
        for axis in ("x1", "x2", "r"):
            val = getattr(args, f"frame_{axis}")
            if val:
                gspec[f"frame_{axis}"] = val
    elif args.type == "cone":
        if args.n is None:
            raise ConfigError("cone generator needs --n")
        if args.seed is None:
            raise ConfigError("cone generator needs --seed")
        gspec["n"] = str(args.n)
    else:
        if args.n is None:
            raise ConfigError("radius-ladder generator needs --n")
        gspec.update(n=str(args.n), r_lo=str(args.r_lo), r_hi=str(args.r_hi))
    cloud = build_cloud(gspec, args.seed if args.seed is not None else 0)
    cloud.to_csv(args.out)
    print(f"wrote {cloud.size} points to {args.out}")
    return 0


def _cmd_project(args) -> int:
    if args.out is None:
        raise ConfigError("project requires --out")
    cloud = WeightedCloud.from_csv(args.cloud)
    scales = parse_scales(args.scales)
    if cloud.resolution is not None:
        scales = [s for s in scales if s >= cloud.resolution - 1e-15]
    thetas = np.linspace(0.0, TWO_PI, args.thetas, endpoint=False)
    results = projection_dim_scan(cloud, thetas, scales, curve=args.curve, threads=args.threads)
    art = Artifacts(args.out)
    art.write_csv(
        "theta_scan.csv",
        "theta,slope,r2",
        [(t, est.slope, est.r_squared) for t, est in results],
    )
    art.write_csv(
        "scales.csv",
        "theta,delta,count",
        [(t, d, c) for t, est in results for d, c in est.counts],
    )
    print(f"scanned {len(results)} angles -> {args.out}")
    return 0


def _cmd_boxdim(args) -> int:
    if args.out is None:
        raise ConfigError("boxdim requires --out")
    cloud = WeightedCloud.from_csv(args.cloud)
    scales = parse_scales(args.scales)
    if cloud.resolution is not None:
        scales = [s for s in scales if s >= cloud.resolution - 1e-15]
    art = Artifacts(args.out)
    if args.mode == "wave-union":
        est = union_wave_dim(cloud, scales)
        _emit_fit(art, "wave_union", est)
    else:
        span = (0.0, math.pi) if args.arc == "upper" else (0.0, TWO_PI)
        est = union_circle_dim(cloud, scales, arc_span=span)
        _emit_fit(art, "circle_union", est)
    art.finalize()
    print(f"slope {est.slope:.4f} (r2 {est.r_squared:.4f}) -> {args.out}")
    return 0


def _cmd_tangency(args) -> int:
    c1 = Circle.from_csv_row(args.circle1)
    c2 = Circle.from_csv_row(args.circle2)
    delta = parse_scale(args.delta)
    params = incidence_params(c1.to_point(), c2.to_point())
    print(f"t={params.t!r}")
    print(f"delta_prime={params.delta_prime!r}")
    try:
        zx, zy = internal_tangency_point(c1, c2)
        print(f"zeta={zx!r},{zy!r}")
    except ValueError as exc:
        print(f"zeta=undefined ({exc})")
    if params.delta_prime <= delta and params.t >= delta:
        rect = rect_from_incident_pair(c1, c2, delta)
        both = is_tangent(c1, rect, DEFAULT_TANGENCY_SCALE) and is_tangent(
            c2, rect, DEFAULT_TANGENCY_SCALE
        )
        print(f"rect={rect.csv_row()}")
        print(f"tangent_both={both}")
    if args.samples > 0:
        if args.seed is None or args.out is None:
            raise ConfigError("sample dump needs --seed and --out")
        rng = np.random.default_rng(args.seed)
        pts = annulus_intersection_samples(c1, c2, delta, args.samples, rng)
        with open(args.out, "w") as fh:
            fh.write("px,py\n")
            for px, py in pts:
                fh.write(f"{px!r},{py!r}\n")
        print(f"kept {pts.shape[0]} of {args.samples} samples -> {args.out}")
    return 0


def _cmd_incidence(args) -> int:
    cloud = WeightedCloud.from_csv(args.cloud)
    delta = parse_scale(args.delta)
    queries = [tuple(float(v) for v in q.split(",")) for q in args.query]
    if args.query_file:
        with open(args.query_file) as fh:
            for line in fh:
                line = line.strip()
                if not line or line[0] in "#pxt":
                    continue
                queries.append(tuple(float(v) for v in line.split(",")[:2]))
    if not queries:
        raise ConfigError("no query points given")
    index = CircleIndex(cloud) if args.family == "circle" else None
    rows = []
    for q in queries:
        if args.family == "circle":
            m = circle_multiplicity(q, cloud, delta, index=index)
        else:
            m = wave_multiplicity(q, cloud, delta)
        rows.append((q[0], q[1], m))
        print(f"{q[0]!r},{q[1]!r} -> {m!r}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("x,y,multiplicity\n")
            for x, y, m in rows:
                fh.write(f"{x!r},{y!r},{m!r}\n")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "gen":
            return _cmd_gen(args)
        if args.command == "project":
            return _cmd_project(args)
        if args.command == "boxdim":
            return _cmd_boxdim(args)
        if args.command == "tangency":
            return _cmd_tangency(args)
        if args.command == "incidence":
            return _cmd_incidence(args)
        if args.command == "experiment":
            cfg = load_config(args.config)
            if args.out:
                cfg.out = args.out
            if args.threads is not None:
                cfg.threads = args.threads
            return run(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
