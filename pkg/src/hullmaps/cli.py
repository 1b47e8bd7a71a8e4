"""Command-line surface tying the library together.

Subcommands: approx, hull, dual, converge, classify.  Exit codes:
0 success, 2 validation error, 3 degenerate configuration, 4 I/O error,
5 numeric error (overflow, ambiguous classification).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import boundary_map, fileio, normal_fan_dual, set_metrics
from .errors import (
    AmbiguousTieError,
    DegenerateConfigurationError,
    DimensionUnsupportedError,
    HullMapsError,
    NumericalOverflowError,
    RequiresDegenerateError,
    StrategyDimensionMismatchError,
    TooManyPointsError,
)
from .geom_core import build_configuration, read_points_csv
from .hull_oracle import build_hull, classify_direction
from .sphere_sampling import CapFocus, SamplePlan, sample, sample_near

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_DEGENERATE = 3
EXIT_IO = 4
EXIT_NUMERIC = 5


@dataclass
class RunConfig:
    """Parsed command request: input/output paths, sweep and plan parameters."""

    subcommand: str
    input_path: str
    out: str
    eps: float = 1e-2
    eps_list: tuple = ()
    samples: int = 2000
    strategy: str | None = None
    seed: int = 0
    cap_center: tuple | None = None
    cap_radius: float | None = None
    render: str = "none"
    boundary_per_facet: int = 200
    degenerate: bool = False
    direction: tuple | None = None
    tol_distinct: float | None = None
    tol_coplanar: float | None = None
    tol_tie: float | None = None


def _default_strategy(dim: int) -> str:
    return {2: "uniform_grid_2d", 3: "fibonacci_3d"}.get(dim, "gaussian_random")


def _make_plan(cfg: RunConfig, dim: int) -> SamplePlan:
    strategy = cfg.strategy or _default_strategy(dim)
    focus = CapFocus(cap_radius=cfg.cap_radius) if cfg.cap_radius else None
    return SamplePlan(dim=dim, strategy=strategy, count=cfg.samples,
                      seed=cfg.seed, focus=focus)


def _load_config(cfg: RunConfig):
    pts = read_points_csv(cfg.input_path)
    return build_configuration(pts, cfg.tol_distinct)


def cmd_approx(cfg: RunConfig) -> int:
    config = _load_config(cfg)
    plan = _make_plan(cfg, config.dim)
    if cfg.cap_center is not None:
        if cfg.cap_radius is None:
            raise ValueError("--cap-center requires --cap-radius")
        dirs = sample_near(plan, np.asarray(cfg.cap_center, dtype=float))
    else:
        dirs = sample(plan)
    images = boundary_map.evaluate_batch_array(config, cfg.eps, dirs)
    fileio.write_points_csv(cfg.out, images)
    if cfg.render == "svg":
        if config.dim != 2:
            raise DimensionUnsupportedError("svg render needs d = 2 input")
        hull = build_hull(config, cfg.tol_coplanar)
        fileio.write_svg(_with_suffix(cfg.out, ".svg"), config, hull, images)
    elif cfg.render == "obj":
        if config.dim != 3:
            raise DimensionUnsupportedError("obj render needs d = 3 input")
        fileio.write_obj_points(_with_suffix(cfg.out, ".obj"), images)
    print(f"wrote {images.shape[0]} image points to {cfg.out}")
    return EXIT_OK


def _with_suffix(path: str, suffix: str) -> str:
    base = path[: path.rfind(".")] if "." in path.split("/")[-1] else path
    return base + suffix


def cmd_hull(cfg: RunConfig) -> int:
    config = _load_config(cfg)
    hull = build_hull(config, cfg.tol_coplanar)
    fileio.write_hull_document(cfg.out, hull)
    n_by_dim = {}
    for f in hull.faces:
        n_by_dim[f.dim] = n_by_dim.get(f.dim, 0) + 1
    summary = " ".join(f"dim{d}:{n_by_dim[d]}" for d in sorted(n_by_dim))
    print(f"hull: {len(hull.vertices)} vertices, {len(hull.facets)} facets ({summary})")
    if config.dim == 3:
        v = n_by_dim.get(0, 0)
        e = n_by_dim.get(1, 0)
        fcount = n_by_dim.get(2, 0)
        print(f"euler check: V - E + F = {v - e + fcount}")
    return EXIT_OK


def cmd_dual(cfg: RunConfig) -> int:
    config = _load_config(cfg)
    if config.dim != 3:
        raise DimensionUnsupportedError("dual exports are defined for d = 3")
    hull = build_hull(config, cfg.tol_coplanar)
    complex_ = normal_fan_dual.spherical_dual(hull)
    verdict = normal_fan_dual.dual_combinatorics_check(hull)
    cells = normal_fan_dual.flattened_spherical_dual(hull)

    dirs = np.asarray([f.outward_normal for f in hull.facets])
    key = {tuple(np.round(v, 12)): k for k, v in enumerate(dirs)}
    index_cells = [[key[tuple(np.round(v, 12))] for v in cell] for _, cell in cells]
    fileio.write_obj_mesh(_with_suffix(cfg.out, "_spherical.obj"), dirs, index_cells)
    fileio.write_obj_mesh(_with_suffix(cfg.out, "_flattened.obj"), dirs, index_cells)

    transform = normal_fan_dual.outer_normal_transform(hull)
    fileio.write_hull_document(_with_suffix(cfg.out, "_transform.txt"), transform)
    fileio.write_dual_descriptor(cfg.out, complex_, verdict)
    print(f"equivalent: {str(verdict.equivalent).lower()}")
    print(f"flattened_convex: {str(verdict.flattened_convex).lower()}")
    return EXIT_OK


def cmd_converge(cfg: RunConfig) -> int:
    config = _load_config(cfg)
    eps_list = cfg.eps_list or set_metrics.DEFAULT_EPSILONS
    plan = _make_plan(cfg, config.dim)
    if cfg.degenerate:
        report = set_metrics.degenerate_limit_probe(
            config, eps_list, plan, config_id=cfg.input_path)
        fileio.write_degenerate_csv(cfg.out, report)
        print(f"span dim {report.span_dim}; "
              f"final sym distance {report.records[-1].sym_dist:.6g}")
        return EXIT_OK
    hull = build_hull(config, cfg.tol_coplanar)
    report = set_metrics.theorem_sweep(
        config, hull, eps_list, plan, cfg.boundary_per_facet, config_id=cfg.input_path)
    fileio.write_report_csv(cfg.out, report)
    fileio.write_report_summary(_with_suffix(cfg.out, "_summary.txt"), report)
    print(f"outer slope {report.slope:.4f} (residual {report.slope_residual:.4f})")
    return EXIT_OK


def cmd_classify(cfg: RunConfig) -> int:
    config = _load_config(cfg)
    if cfg.direction is None:
        raise ValueError("classify requires --direction")
    d = np.asarray(cfg.direction, dtype=float)
    nrm = np.linalg.norm(d)
    if nrm == 0:
        raise ValueError("direction must be nonzero")
    d = d / nrm
    hull = build_hull(config, cfg.tol_coplanar)
    face = classify_direction(hull, d, cfg.tol_tie)
    kind = {0: "vertex", 1: "edge"}.get(face.dim, f"{face.dim}-face")
    if face.dim == config.dim - 1:
        kind = "facet"
    print(f"{kind} {{{', '.join(str(i) for i in face.vertex_indices)}}} "
          f"(face id {face.face_id}, dim {face.dim})")
    if cfg.out:
        with open(cfg.out, "w", newline="\n") as fh:
            fh.write(f"face_id,{face.face_id}\ndim,{face.dim}\npoints,"
                     + " ".join(str(i) for i in face.vertex_indices) + "\n")
    return EXIT_OK


def _parse_floats(text: str) -> tuple:
    return tuple(float(t) for t in text.replace(",", " ").split())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hullmaps",
        description="Sphere-to-hull boundary maps, duals, and convergence sweeps.",
        epilog="exit codes: 0 ok, 2 validation, 3 degenerate input, 4 I/O, 5 numeric",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, needs_out=True):
        p.add_argument("input", help="points CSV (dim,<d> header)")
        if needs_out:
            p.add_argument("--out", required=True, help="output path")
        else:
            p.add_argument("--out", default="", help="optional output path")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol-distinct", type=float, default=None)
        p.add_argument("--tol-coplanar", type=float, default=None)
        p.add_argument("--tol-tie", type=float, default=None)

    p = sub.add_parser("approx", help="evaluate the map over a direction sample")
    common(p)
    p.add_argument("--eps", type=float, default=1e-2)
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--strategy", choices=["uniform_grid_2d", "fibonacci_3d", "gaussian_random"])
    p.add_argument("--cap-center", type=str, default=None,
                   help="comma-separated direction for targeted sampling")
    p.add_argument("--cap-radius", type=float, default=None)
    p.add_argument("--render", choices=["svg", "obj", "none"], default="none")

    p = sub.add_parser("hull", help="write the hull document")
    common(p)

    p = sub.add_parser("dual", help="spherical/flattened duals, transform, verdict (d=3)")
    common(p)

    p = sub.add_parser("converge", help="epsilon sweep of boundary distances")
    common(p)
    p.add_argument("--eps-list", type=str, default="",
                   help="comma-separated decreasing epsilons")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--strategy", choices=["uniform_grid_2d", "fibonacci_3d", "gaussian_random"])
    p.add_argument("--boundary-per-facet", type=int, default=200)
    p.add_argument("--degenerate", action="store_true",
                   help="measure against the full lower-dimensional hull")

    p = sub.add_parser("classify", help="face of the normal-fan cell containing a direction")
    common(p, needs_out=False)
    p.add_argument("--direction", type=str, required=True,
                   help="comma-separated direction components")

    return parser


def _to_runconfig(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(subcommand=args.subcommand, input_path=args.input,
                    out=getattr(args, "out", ""))
    cfg.seed = args.seed
    cfg.tol_distinct = args.tol_distinct
    cfg.tol_coplanar = args.tol_coplanar
    cfg.tol_tie = args.tol_tie
    if hasattr(args, "eps"):
        cfg.eps = args.eps
    if hasattr(args, "samples"):
        cfg.samples = args.samples
    if getattr(args, "strategy", None):
        cfg.strategy = args.strategy
    if getattr(args, "cap_center", None):
        cfg.cap_center = _parse_floats(args.cap_center)
    if getattr(args, "cap_radius", None) is not None:
        cfg.cap_radius = args.cap_radius
    if getattr(args, "render", None):
        cfg.render = args.render
    if getattr(args, "eps_list", ""):
        cfg.eps_list = _parse_floats(args.eps_list)
    if hasattr(args, "boundary_per_facet"):
        cfg.boundary_per_facet = args.boundary_per_facet
    if getattr(args, "degenerate", False):
        cfg.degenerate = True
    if getattr(args, "direction", None):
        cfg.direction = _parse_floats(args.direction)
    return cfg


_HANDLERS = {
    "approx": cmd_approx,
    "hull": cmd_hull,
    "dual": cmd_dual,
    "converge": cmd_converge,
    "classify": cmd_classify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _to_runconfig(args)
    try:
        return _HANDLERS[cfg.subcommand](cfg)
    except (FileNotFoundError, PermissionError, IsADirectoryError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (DegenerateConfigurationError, RequiresDegenerateError) as exc:
        print(f"degenerate-configuration error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (NumericalOverflowError, AmbiguousTieError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, DimensionUnsupportedError, StrategyDimensionMismatchError,
            TooManyPointsError, HullMapsError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    raise SystemExit(main())
