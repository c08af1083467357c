"""Command-line front end.

Exit codes: 0 ok, 2 usage or parse error, 3 solver failure, 4 geometric
singularity. Diagnostics go to stdout as ``key=value`` lines, warnings to
stderr.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

import numpy as np

from . import bench, io, shapes
from .density import residual_bound
from .dimension import estimate_local_dimension
from .errors import (
    DimensionUnsupported,
    IllConditionedWarning,
    KernelSigError,
    SingularPoint,
    SolveFailed,
)
from .isoline import extract_isolines
from .kernels import KernelSpec
from .signature import SignatureModel

EXIT_USAGE, EXIT_SOLVE, EXIT_SINGULAR = 2, 3, 4

SHAPES = ("circle", "square", "sector", "graph", "sphere", "folded-curve", "folded-surface")


class UsageError(Exception):
    pass


def _emit(text, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_gen(args):
    s = args.shape
    if s == "circle":
        cloud = shapes.gen_circle(args.n or 30, args.radius)
    elif s == "square":
        cloud = shapes.gen_square(args.n or 48, args.side)
    elif s == "sector":
        cloud, _ = shapes.gen_sector(args.n or 64, args.aperture, args.radius)
    elif s == "graph":
        cloud = shapes.gen_graph(args.n or 51)
    elif s == "sphere":
        cloud = shapes.gen_sphere_sample(args.m or args.n or 80, args.seed)
    elif s == "folded-curve":
        cloud = shapes.gen_folded_curve(args.n or 54, args.ambient)
    else:
        cloud = shapes.gen_extruded_surface(args.n or 54, args.n_y)
    if args.noise_percent:
        cloud = shapes.add_noise(cloud, shapes.NoiseSpec(args.noise_percent, args.seed))
    _emit(io.cloud_to_csv(cloud), args.out)
    return 0


def _spec_from_args(args):
    fam = {"gauss": "gauss", "laplace": "laplace", "laplace-r": "laplace-r"}[args.kernel]
    return KernelSpec(fam, r=args.r, delta=args.delta)


def cmd_fit(args):
    cloud = io.read_cloud(args.cloud)
    spec = _spec_from_args(args)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IllConditionedWarning)
        model = SignatureModel.fit(cloud, spec, args.alpha, ridge=args.ridge)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    dens = model.density
    u = model.evaluate_many(cloud.points)[0]
    check = float(np.max(np.abs(u - (1.0 - dens.effective_alpha * dens.lam))))
    print(f"m={cloud.m}")
    print(f"d={cloud.d}")
    print(f"kernel={spec.family}")
    print(f"alpha={dens.alpha!r}")
    print(f"solver_path={dens.solver_path}")
    print(f"condition_estimate={dens.condition_estimate:.6g}")
    print(f"residual={dens.residual:.6g}")
    print(f"residual_bound={residual_bound(cloud.m, dens.lam):.6g}")
    print(f"interpolation_check={check:.6g}")
    if dens.ill_conditioned:
        print("ill_conditioned=1")
    io.save_model(model, args.out)
    return 0


def _query_points(args, model):
    if args.at_data:
        return model.cloud.points
    if not args.points:
        raise UsageError("give --points FILE or --at-data")
    pts = io.read_cloud(args.points).points
    if pts.shape[1] != model.d:
        raise UsageError(f"query points have d={pts.shape[1]}, model has d={model.d}")
    return pts


def cmd_analyze(args):
    model = io.load_model(args.model)
    pts = _query_points(args, model)
    d = model.d
    want_normals = args.normals or args.curvature or args.reference_center is not None
    center = None
    if args.reference_center is not None:
        center = np.array([float(c) for c in args.reference_center.split(",")]) \
            if args.reference_center else np.zeros(d)
        if center.size != d:
            raise UsageError("reference center has the wrong dimension")
    cols = [f"x{i}" for i in range(d)] + ["u"] + [f"g{i}" for i in range(d)]
    if want_normals:
        cols += [f"n{i}" for i in range(d)]
    if args.curvature:
        cols += [f"k{i}" for i in range(d - 1)]
    if want_normals:
        cols += ["regularized"]
    if center is not None:
        cols += ["normal_angle_deg"]
    if args.dimension:
        cols += [f"sv{i}" for i in range(d)] + ["dimension"]

    rng = np.random.default_rng(args.seed)
    lines = [",".join(cols)]
    for p in pts:
        u, g = model.evaluate(p, 1)
        row = [*p, u, *g]
        try:
            if want_normals:
                rep = model.curvatures_at(p, rng=rng) if d > 1 else None
                nu = rep.normal if rep is not None else model.normal_at(p, rng=rng)
                row += list(nu)
                if args.curvature:
                    row += list(rep.curvatures)
                row.append(int(rep.regularized) if rep is not None else 0)
                if center is not None:
                    row.append(bench.angle_deg(nu, p - center))
            if args.dimension:
                est = estimate_local_dimension(model, p, args.probes, args.radius,
                                               args.threshold, rng)
                row += list(est.singular_values) + [est.estimated_dimension]
        except SingularPoint as exc:
            print(f"error: singular point {list(map(float, p))}: {exc}", file=sys.stderr)
            return EXIT_SINGULAR
        lines.append(",".join(f"{v:.17g}" if isinstance(v, float) else str(v) for v in row))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_isoline(args):
    model = io.load_model(args.model)
    if model.d != 2:
        raise DimensionUnsupported(f"isolines need a 2-D model, got d={model.d}")
    iso = args.iso
    if iso == "default":
        iso = None
    elif iso != "auto":
        try:
            iso = float(iso)
        except ValueError:
            raise UsageError(f"--iso must be 'auto', 'default' or a number, got {iso!r}")
    res = extract_isolines(model, iso, args.grid[0], args.grid[1], args.margin)
    fmt = args.format
    if fmt is None:
        fmt = "svg" if args.out and str(args.out).endswith(".svg") else "csv"
    if fmt == "svg":
        normals = None
        if args.normals:
            normals = np.array([model.normal_at(p) for p in model.cloud.points])
        text = io.isolines_to_svg(res, model.cloud, normals)
    else:
        text = io.isolines_to_csv(res)
    print(f"iso_value={res.iso_value!r}", file=sys.stderr)
    print(f"polylines={len(res.polylines)}", file=sys.stderr)
    _emit(text, args.out)
    return 0


def cmd_bench(args):
    names = list(bench.SUITES) if args.suite == "all" else [args.suite]
    csv_parts, md_parts = [], []
    for name in names:
        table = bench.SUITES[name](args.seed)
        csv_parts.append(table.to_csv())
        md_parts.append(table.to_markdown())
    md = "\n".join(md_parts)
    if args.out:
        Path(f"{args.out}.csv").write_text("\n".join(csv_parts))
        Path(f"{args.out}.md").write_text(md)
    sys.stdout.write(md)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="kernelsig", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a test point cloud")
    g.add_argument("shape", choices=SHAPES)
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--radius", type=float, default=1.0)
    g.add_argument("--side", type=float, default=2.0)
    g.add_argument("--aperture", type=float, default=np.pi / 16)
    g.add_argument("--n-y", type=int, default=7)
    g.add_argument("--ambient", type=int, default=3, choices=(2, 3))
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--noise-percent", type=float, default=0.0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    f = sub.add_parser("fit", help="fit a signature model to a cloud")
    f.add_argument("--cloud", required=True)
    f.add_argument("--kernel", choices=("gauss", "laplace", "laplace-r"), default="gauss")
    f.add_argument("--r", type=float, default=1e-6)
    f.add_argument("--delta", type=float, default=1.0)
    f.add_argument("--alpha", type=float, default=0.0)
    f.add_argument("--ridge", choices=("scaled", "plain"), default="scaled")
    f.add_argument("--out", required=True)
    f.set_defaults(func=cmd_fit)

    a = sub.add_parser("analyze", help="normals, curvatures and dimension at query points")
    a.add_argument("--model", required=True)
    src = a.add_mutually_exclusive_group()
    src.add_argument("--points")
    src.add_argument("--at-data", action="store_true")
    a.add_argument("--normals", action="store_true")
    a.add_argument("--curvature", action="store_true")
    a.add_argument("--dimension", action="store_true")
    a.add_argument("--reference-center", nargs="?", const="",
                   help="add the angle between the normal and the radial direction from this point")
    a.add_argument("--probes", type=int, default=15)
    a.add_argument("--radius", type=float, default=0.01)
    a.add_argument("--threshold", type=float, default=0.1)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    i = sub.add_parser("isoline", help="extract level lines of a planar model")
    i.add_argument("--model", required=True)
    i.add_argument("--iso", default="default")
    i.add_argument("--grid", type=int, nargs=2, default=(200, 200), metavar=("NX", "NY"))
    i.add_argument("--margin", type=float, default=0.2)
    i.add_argument("--format", choices=("csv", "svg"))
    i.add_argument("--normals", action="store_true", help="draw normal arrows in SVG output")
    i.add_argument("--out")
    i.set_defaults(func=cmd_isoline)

    b = sub.add_parser("bench", help="regenerate the benchmark tables")
    b.add_argument("suite", choices=tuple(bench.SUITES) + ("all",))
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SolveFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SOLVE
    except SingularPoint as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except (UsageError, KernelSigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
