"""Command-line front end: simulate, calibrate, weights, aggregate.

All matrices travel as comma-separated CSV (one row per grid point, no
quoting, '.' decimal); diagnostics are key=value lines; plots are minimal
SVG files.  ``FUNCAL_SEED`` serves as a fallback seed source when a
command needs one and ``--seed`` was not given.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from .calibration import DEFAULT_WAVELET, calibrate_splines, calibrate_wavelets, estimate_weights
from .core import AggregatedSamples, ComponentCurves, SampleGrid, WeightMatrix, aggregate_curve
from .errors import FuncalError, ValidationError
from .io import read_matrix, read_vector, write_diagnostics, write_matrix
from .shrinkage import METHODS, RULE_TYPES, ShrinkageSpec
from .simulate import simulate_dataset
from .svg import write_line_chart
from .wavelet import SUPPORTED_FAMILIES

_ERROR_PREFIX = "funcal: error:"


def _resolve_seed(value):
    if value is not None:
        return value
    env = os.environ.get("FUNCAL_SEED")
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError:
            raise ValidationError(f"FUNCAL_SEED must be an integer, got {env!r}") from None
    return None


def _default_grid(n_points: int) -> SampleGrid:
    return SampleGrid(np.arange(1.0, n_points + 1.0))


def _cmd_simulate(args) -> int:
    seed = _resolve_seed(args.seed)
    if seed is None:
        raise ValidationError(
            "simulate requires --seed (or the FUNCAL_SEED environment variable) "
            "so the output files are reproducible"
        )
    dataset = simulate_dataset(n=args.n, m=args.m, noise_sd=args.noise_sd, seed=seed)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_matrix(out / "data.csv", dataset.data.values)
    write_matrix(out / "weights.csv", dataset.weights.values)
    write_matrix(out / "x.csv", dataset.x.points)
    write_matrix(out / "alphas.csv", dataset.alphas.values)
    print(f"wrote data.csv, weights.csv, x.csv, alphas.csv to {out}")
    return 0


def _cmd_calibrate(args) -> int:
    data = AggregatedSamples(read_matrix(args.data, header=args.header))
    weights = WeightMatrix(read_matrix(args.weights, header=args.header))
    if args.x is not None:
        grid = SampleGrid(read_vector(args.x, header=args.header))
    else:
        grid = _default_grid(data.n_points)

    if args.basis == "wavelets":
        seed = _resolve_seed(args.seed)
        if args.mc and seed is None:
            raise ValidationError(
                "--mc needs --seed (or FUNCAL_SEED) for reproducible "
                "Monte Carlo integration"
            )
        spec = ShrinkageSpec(
            method=args.method,
            rule_type=args.type,
            tau=args.tau,
            p=args.p,
            sigma=args.sigma,
            mc=args.mc,
            mc_samples=args.mc_samples,
            seed=seed,
        )
        result = calibrate_wavelets(
            data, weights, grid, filter_name=args.wavelet, spec=spec,
            singular=args.singular,
        )
    else:
        if args.n_functions is None:
            raise ValidationError("--basis splines requires --n-functions")
        result = calibrate_splines(data, weights, grid, n_functions=args.n_functions)

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    write_matrix(out / "alphas.csv", result.curves.values)
    write_diagnostics(out / "diagnostics.txt", result.diagnostics)
    written = ["alphas.csv", "diagnostics.txt"]
    if args.plot:
        for l in range(result.curves.n_components):
            name = f"alpha{l + 1}.svg"
            write_line_chart(
                out / name,
                grid.points,
                result.curves.values[:, l],
                title=f"Estimated component {l + 1} ({args.basis})",
            )
            written.append(name)
    print(f"wrote {', '.join(written)} to {out}")
    return 0


def _cmd_weights(args) -> int:
    sample = read_vector(args.data, header=args.header)
    alphas = ComponentCurves(read_matrix(args.alphas, header=args.header))
    w = estimate_weights(sample, alphas)
    for value in w:
        print(f"{value:.10g}")
    if args.out is not None:
        write_matrix(args.out, w)
    return 0


def _cmd_aggregate(args) -> int:
    alphas = ComponentCurves(read_matrix(args.alphas, header=args.header))
    try:
        w = [float(tok) for tok in args.weights.split(",") if tok.strip()]
    except ValueError:
        raise ValidationError(
            f"--weights must be a comma-separated list of numbers, got {args.weights!r}"
        ) from None
    curve = aggregate_curve(alphas, w)
    if args.x is not None:
        grid = SampleGrid(read_vector(args.x, header=args.header))
        if len(grid) != curve.shape[0]:
            raise ValidationError(
                f"x has {len(grid)} points but alphas has {curve.shape[0]} rows"
            )
    else:
        grid = _default_grid(curve.shape[0])
    out = Path(args.out)
    write_matrix(out, curve)
    written = [str(out)]
    if args.plot:
        svg_path = out.with_suffix(".svg")
        write_line_chart(svg_path, grid.points, curve, title=args.title)
        written.append(str(svg_path))
    print(f"wrote {', '.join(written)}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="funcal",
        description="Estimate component curves from aggregated functional data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="write a reference simulated dataset")
    p_sim.add_argument("--n", type=int, default=100, help="number of samples")
    p_sim.add_argument("--m", type=int, default=1024, help="number of grid points")
    p_sim.add_argument("--noise-sd", type=float, default=0.1, help="noise standard deviation")
    p_sim.add_argument("--seed", type=int, default=None, help="RNG seed (or FUNCAL_SEED)")
    p_sim.add_argument("--out-dir", required=True, help="output directory")
    p_sim.set_defaults(func=_cmd_simulate)

    p_cal = sub.add_parser("calibrate", help="estimate component curves")
    p_cal.add_argument("--data", required=True, help="M x N aggregated samples CSV")
    p_cal.add_argument("--weights", required=True, help="L x N weights CSV")
    p_cal.add_argument("--x", default=None, help="M x 1 grid CSV (default: 1..M)")
    p_cal.add_argument("--basis", choices=("wavelets", "splines"), required=True)
    p_cal.add_argument("--wavelet", default=DEFAULT_WAVELET, choices=SUPPORTED_FAMILIES,
                       help="wavelet family")
    p_cal.add_argument("--method", default="bayesian", choices=METHODS,
                       help="shrinkage method")
    p_cal.add_argument("--tau", type=float, default=5.0, help="logistic prior scale")
    p_cal.add_argument("--p", type=float, default=None,
                       help="point-mass probability (default: level-dependent)")
    p_cal.add_argument("--sigma", type=float, default=None,
                       help="noise scale (default: estimated)")
    p_cal.add_argument("--mc", action="store_true",
                       help="Monte Carlo integration for the Bayesian rule")
    p_cal.add_argument("--mc-samples", type=int, default=10_000)
    p_cal.add_argument("--type", choices=RULE_TYPES, default="soft",
                       help="thresholding rule for non-Bayesian methods")
    p_cal.add_argument("--singular", action="store_true",
                       help="add 1e-10 to the diagonal of y y^T")
    p_cal.add_argument("--n-functions", type=int, default=None,
                       help="number of spline basis functions")
    p_cal.add_argument("--seed", type=int, default=None, help="RNG seed (or FUNCAL_SEED)")
    p_cal.add_argument("--plot", action="store_true", help="write one SVG per component")
    p_cal.add_argument("--header", action="store_true", help="input CSVs carry a header row")
    p_cal.add_argument("--out-dir", required=True, help="output directory")
    p_cal.set_defaults(func=_cmd_calibrate)

    p_w = sub.add_parser("weights", help="estimate weights from one aggregated sample")
    p_w.add_argument("--data", required=True, help="M x 1 sample CSV")
    p_w.add_argument("--alphas", required=True, help="M x L component curves CSV")
    p_w.add_argument("--out", default=None, help="optional output CSV")
    p_w.add_argument("--header", action="store_true", help="input CSVs carry a header row")
    p_w.set_defaults(func=_cmd_weights)

    p_agg = sub.add_parser("aggregate", help="combine component curves with weights")
    p_agg.add_argument("--alphas", required=True, help="M x L component curves CSV")
    p_agg.add_argument("--weights", required=True, help="comma-separated weights, e.g. 0.7,0.3")
    p_agg.add_argument("--x", default=None, help="M x 1 grid CSV (default: 1..M)")
    p_agg.add_argument("--out", default="aggregated.csv", help="output CSV path")
    p_agg.add_argument("--title", default="Aggregated curve", help="plot title")
    p_agg.add_argument("--plot", action="store_true", help="write an SVG next to the CSV")
    p_agg.add_argument("--header", action="store_true", help="input CSVs carry a header row")
    p_agg.set_defaults(func=_cmd_aggregate)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FuncalError as exc:
        print(f"{_ERROR_PREFIX} {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"{_ERROR_PREFIX} {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
