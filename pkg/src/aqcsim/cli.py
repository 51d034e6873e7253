"""Command-line driver: single instances, ensembles, slices, and plots."""

from __future__ import annotations

import argparse
import sys

from .config import ConfigError, load_config
from .ensemble import run_ensemble, slice_sweep
from .evolution import EvolutionError
from .hamiltonian import CouplingVector
from .metrics import run_instance
from .records import read_records, write_records
from .spectrum import JacobiConvergenceError
from .svgplot import PlotSpec, emit_plot


class UsageError(Exception):
    pass


def _fmt(x) -> str:
    return format(float(x), ".17g")


def _cmd_single(args) -> int:
    expected = 2**args.n - 1
    if len(args.J) != expected:
        raise UsageError(f"--J needs exactly {expected} values for n={args.n}")
    cv = CouplingVector.from_terms(args.n, args.J)
    rec = run_instance(cv, args.T)
    print(f"n={rec.n}")
    print(f"T={_fmt(rec.T)}")
    print("J=" + ",".join(_fmt(j) for j in cv.J))
    print(f"min_gap={_fmt(rec.min_gap)}")
    print(f"s_star={_fmt(rec.s_star)}")
    print(f"P={_fmt(rec.success_prob)}")
    print(f"delta_E={_fmt(rec.energy_error)}")
    print(f"delta={_fmt(rec.avg_overlap)}")
    print(f"abs_J_top={_fmt(rec.abs_J_top)}")
    print(f"ground_dim={rec.ground_subspace_dim}")
    print(f"norm_drift={_fmt(rec.max_norm_drift)}")
    print(f"M={_fmt(rec.matrix_element_max)}")
    print(f"criterion_bound={_fmt(rec.criterion_bound)}")
    print("flags=" + ";".join(rec.flags))
    return 0


def _cmd_ensemble(args) -> int:
    cfg = load_config(args.config)
    out = args.out if args.out else cfg.out
    records = []
    summary = run_ensemble(cfg.ensemble, records.append, workers=cfg.workers)
    count = write_records(records, out)
    print(
        f"wrote {count} records to {out} "
        f"({summary.failures} failed, {summary.wall_time:.1f}s)"
    )
    return 0


def _cmd_slice(args) -> int:
    records = slice_sweep(args.j3, args.grid, args.half_width, args.T)
    count = write_records(records, args.out)
    print(f"wrote {count} records to {args.out}")
    return 0


def _cmd_plot(args) -> int:
    records = read_records(args.csv)
    spec = PlotSpec(
        x=args.x,
        y=args.y,
        color=args.color,
        kind=args.kind,
        cmin=args.cmin,
        cmax=args.cmax,
    )
    emit_plot(records, spec, args.out)
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aqcsim",
        description="Annealing-path simulator: gaps, success probabilities, ensembles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("single", help="run one explicit instance and print its record")
    p.add_argument("--n", type=int, required=True, help="qubit count")
    p.add_argument(
        "--J",
        type=float,
        nargs="+",
        required=True,
        metavar="J",
        help="the 2^n - 1 couplings J_1 .. J_{2^n-1}",
    )
    p.add_argument("--T", type=float, required=True, help="computation time")
    p.set_defaults(func=_cmd_single)

    p = sub.add_parser("ensemble", help="run a sampled ensemble from a config file")
    p.add_argument("--config", required=True, help="key = value configuration file")
    p.add_argument("--out", default=None, help="override the output CSV path")
    p.set_defaults(func=_cmd_ensemble)

    p = sub.add_parser("slice", help="two-qubit sweep over (J1, J2) at fixed J3")
    p.add_argument("--j3", type=float, required=True, help="fixed J3 value")
    p.add_argument("--grid", type=int, default=101, help="points per axis (default 101)")
    p.add_argument("--half-width", type=float, default=3.0, help="axis half-width (default 3)")
    p.add_argument("--T", type=float, default=5.0, help="computation time (default 5)")
    p.add_argument("--out", default="slice.csv", help="output CSV path")
    p.set_defaults(func=_cmd_slice)

    p = sub.add_parser("plot", help="render a CSV of records to a standalone SVG")
    p.add_argument("--csv", required=True, help="records CSV produced by ensemble/slice")
    p.add_argument("--x", required=True, help="x field name")
    p.add_argument("--y", required=True, help="y field name")
    p.add_argument("--color", default=None, help="color field name")
    p.add_argument("--kind", choices=("scatter", "heatmap"), default="scatter")
    p.add_argument("--cmin", type=float, default=None, help="color scale lower bound")
    p.add_argument("--cmax", type=float, default=None, help="color scale upper bound")
    p.add_argument("--out", required=True, help="output SVG path")
    p.set_defaults(func=_cmd_plot)

    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, ValueError, OSError, EvolutionError, JacobiConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
