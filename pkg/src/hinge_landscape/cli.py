"""Command-line front end.

Every subcommand is a thin adapter over the library: it loads inputs, calls
one or two library functions and writes the result.  Data goes to stdout
(CSV for polylines and grids, JSON for reports), logs go to stderr.

Exit codes: 0 success, 1 validation or input error, 2 internal assertion.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .ambiguity import (
    FIGURE_HEADER,
    PAPER_RECIPE,
    PairRecipe,
    construct_pair,
    false_minima_report,
    figure_rows,
    pair_report,
    paper_example,
)
from .calculus import gradient_multi, hessian_multi
from .curves import census_report, enumerate_patterns, rational_grid, witness_polylines
from .datagen import DatagenConfig, HingeTruth, generate
from .errors import HingeError, SampleFormatError
from .io import csv_text, dumps, read_samples, samples_to_csv, samples_to_json, with_schema
from .model import Sample, SampleSet, is_valid, objective, validity_margins
from .solver import MINIMA_CSV_HEADER, SolveOptions, minima_csv_rows, multistart
from .stationary import (
    CURVE_CSV_HEADER,
    GRID_CSV_HEADER,
    argument_range,
    canonical,
    curve_csv_rows,
    grid_csv_rows,
    grid_points,
    trace_curve,
)

__all__ = ["run", "main", "build_parser"]

log = logging.getLogger("hinge_landscape")
DEFAULT_SEED = 0


class UsageError(Exception):
    """Bad command line; reported with exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- argument helpers ---------------------------------------------------------------


def _k_range(text: str) -> range:
    try:
        a, b = (int(p) for p in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b with integers, got {text!r}") from None
    if b < a:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(a, b + 1)


def _grid_spec(text: str):
    try:
        lo, hi, step = text.split(":")
        return rational_grid(lo, hi, step)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected lo:hi:step, got {text!r}") from None


def _existing_file(text: str) -> Path:
    path = Path(text)
    if not path.is_file():
        raise argparse.ArgumentTypeError(f"no such file: {text}")
    return path


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="suppress log messages on stderr")
    common.add_argument("--out-dir", type=Path, help="directory for side files (created if missing)")

    seeded = _Parser(add_help=False)
    seeded.add_argument("--seed", type=int, help=f"random seed (default {DEFAULT_SEED})")

    parser = _Parser(prog="hinge-landscape", description="Landscape analysis of the two-angle hinge objective.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="objective and derivatives at one angle pair")
    p.add_argument("--sample", type=_existing_file, required=True)
    p.add_argument("--theta1", type=float, required=True)
    p.add_argument("--theta2", type=float, required=True)

    p = sub.add_parser("grid", parents=[common], help="classified lattice of stationary points (CSV)")
    p.add_argument("--sample", type=_existing_file, required=True)
    p.add_argument("--k-range", type=_k_range, default=range(0, 4), help="inclusive a:b for k1 (default 0:3)")
    p.add_argument("--k2-range", type=_k_range, help="inclusive a:b for k2 (default: same as --k-range)")

    p = sub.add_parser("curve", parents=[common], help="zero curve traced over the patch (CSV)")
    p.add_argument("--sample", type=_existing_file, required=True)
    p.add_argument("--points", type=_positive_int, default=200)

    p = sub.add_parser("patterns", parents=[common], help="census of patch boundary patterns (JSON)")
    p.add_argument("--u-grid", type=_grid_spec, help="lo:hi:step (default 0.01:4:0.01)")
    p.add_argument("--v-grid", type=_grid_spec, help="lo:hi:step (default -4:4:0.01)")
    p.add_argument("--no-confirm", action="store_true", help="skip the geometric confirmation scan")
    p.add_argument("--points", type=_positive_int, default=200, help="points per witness polyline")

    p = sub.add_parser("pair", parents=[common], help="ambiguous sample pair and its false minima (JSON)")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--paper-example", action="store_true", help="the built-in reference pair")
    g.add_argument("--recipe", type=_existing_file, help="JSON file with Q, R, Bs1, lambda1_sq, Abeta")
    p.add_argument("--points", type=_positive_int, default=400, help="points per curve polyline")

    p = sub.add_parser("solve", parents=[common, seeded], help="multi-start minimization (CSV)")
    p.add_argument("--samples", type=_existing_file, required=True)
    p.add_argument("--multistart", type=int, default=20, metavar="N", help="starts per axis (N x N grid, N >= 4)")
    p.add_argument("--jitter", type=float, default=0.0, help="start jitter as a fraction of the grid spacing")
    p.add_argument("--threshold", type=float, help="objective level for a minimum of interest")
    p.add_argument("--merge-radius", type=float, default=1e-4)
    p.add_argument("--max-iterations", type=_positive_int, default=SolveOptions.max_iterations)
    p.add_argument("--gradient-tolerance", type=float, default=SolveOptions.gradient_tolerance)
    p.add_argument("--verbose", action="store_true", help="JSON report with every start instead of CSV")

    p = sub.add_parser("datagen", parents=[common, seeded], help="synthetic samples for a known hinge")
    p.add_argument("--theta1", type=float, required=True)
    p.add_argument("--theta2", type=float, required=True)
    p.add_argument("--count", type=_positive_int, default=5)
    p.add_argument("--noise", type=float, default=0.0, help="gaussian sigma added to every component")
    p.add_argument("--magnitude", type=float, nargs=2, metavar=("LO", "HI"), default=(0.5, 5.0))
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="path prefix: writes PREFIX.csv or PREFIX.json and PREFIX.truth.json")
    return parser


# -- helpers --------------------------------------------------------------------


def _seed(args) -> int:
    if args.seed is None:
        log.info("seed = %d (default)", DEFAULT_SEED)
        return DEFAULT_SEED
    return args.seed


def _side_file(args, name: str, text: str) -> None:
    if args.out_dir is None:
        return
    path = args.out_dir / name
    path.write_text(text)
    log.info("wrote %s", path)


def _single_sample(samples: SampleSet, command: str) -> Sample:
    if len(samples) != 1:
        raise SampleFormatError(f"{command} expects exactly one sample, file has {len(samples)}")
    return samples[0]


def _validity_message(sample: Sample) -> str | None:
    m1, m2 = validity_margins(sample)
    failed = []
    if not m1 > 0:
        failed.append(f"w12^2 < |w2|^2 fails (margin {m1:.6g})")
    if not m2 > 0:
        failed.append(f"w22^2 < |w1|^2 fails (margin {m2:.6g})")
    return "; ".join(failed) or None


def _load_recipe(path: Path) -> dict:
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SampleFormatError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise SampleFormatError(f"{path}: expected a JSON object")
    fields = {}
    for name in ("Q", "R", "Bs1", "lambda1_sq", "Abeta"):
        if name not in obj:
            raise SampleFormatError(f"{path}: missing field '{name}'")
        fields[name] = obj[name]
    extras = {k: obj[k] for k in ("Aw22", "Bw22", "Bbeta", "base_alphas") if k in obj}
    for name, value in (*fields.items(), *((k, v) for k, v in extras.items() if k != "base_alphas")):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SampleFormatError(f"{path}: field '{name}' is not a number: {value!r}")
    if "base_alphas" in extras:
        a = extras["base_alphas"]
        if not (isinstance(a, list) and len(a) == 2 and all(isinstance(x, (int, float)) for x in a)):
            raise SampleFormatError(f"{path}: field 'base_alphas' must be a list of two numbers")
    return {"recipe": PairRecipe(**{k: float(v) for k, v in fields.items()}), **extras}


# -- subcommands ---------------------------------------------------------------------


def _cmd_eval(args) -> int:
    samples = read_samples(args.sample)
    angles = (args.theta1, args.theta2)
    g = gradient_multi(samples, angles)
    h = hessian_multi(samples, angles)
    payload = with_schema({
        "theta1": args.theta1,
        "theta2": args.theta2,
        "n_samples": len(samples),
        "objective": float(objective(samples, angles)),
        "gradient": [g.dO_dtheta1, g.dO_dtheta2],
        "hessian": [[h.h11, h.h12], [h.h12, h.h22]],
        "hessian_det": h.det,
        "valid": [is_valid(s) for s in samples],
    })
    print(dumps(payload))
    return 0


def _cmd_grid(args) -> int:
    sample = _single_sample(read_samples(args.sample), "grid")
    message = _validity_message(sample)
    if message:
        log.warning("sample is not valid: %s; odd/even points become minima", message)
    points = grid_points(sample, args.k_range, args.k2_range or args.k_range)
    sys.stdout.write(csv_text(GRID_CSV_HEADER, grid_csv_rows(points)))
    return 0


def _cmd_curve(args) -> int:
    sample = _single_sample(read_samples(args.sample), "curve")
    message = _validity_message(sample)
    if message:
        raise HingeError(f"sample has no zero curve: {message}")
    curve = canonical(sample)
    trace = trace_curve(sample, args.points)
    log.info("canonical curve: u = %.17g, v = %.17g", curve.u, curve.v)
    sys.stdout.write(csv_text(CURVE_CSV_HEADER, curve_csv_rows(sample, trace)))
    lo, hi = argument_range(sample)
    _side_file(args, "curve.json", dumps(with_schema({
        "u": curve.u, "v": curve.v, "argument_range": [lo, hi],
        "alpha1": sample.alpha1, "alpha2": sample.alpha2, "points": args.points,
    })) + "\n")
    return 0


def _cmd_patterns(args) -> int:
    census = enumerate_patterns(args.u_grid, args.v_grid, confirm=not args.no_confirm)
    payload = with_schema({
        "patterns_found": census.count,
        "cells": census.cells,
        "empty_cells": census.empty_cells,
        "all_confirmed": census.all_confirmed if not args.no_confirm else None,
        "patterns": census_report(census),
    })
    print(dumps(payload))
    _side_file(args, "pattern_witnesses.csv",
               csv_text(("pattern", "labels", "two_r1", "two_r2"), witness_polylines(census, args.points)))
    return 0


def _cmd_pair(args) -> int:
    if args.paper_example:
        pair = paper_example()
        recipe = PAPER_RECIPE
    else:
        extras = _load_recipe(args.recipe)
        recipe = extras.pop("recipe")
        pair = construct_pair(recipe, **extras)
    report = false_minima_report(pair)
    payload = pair_report(pair, report)
    payload["recipe"] = {k: getattr(recipe, k) for k in ("Q", "R", "Bs1", "lambda1_sq", "Abeta")}
    print(dumps(with_schema(payload)))
    log.info("%d false minima per cell, closest pair %.6g rad apart", report.count, report.min_distance)
    _side_file(args, "pair_figure.csv", csv_text(FIGURE_HEADER, figure_rows(pair, args.points, report)))
    return 0


def _result_dict(r) -> dict:
    return {
        "start": list(r.start), "angles": list(r.angles), "objective": r.objective_value,
        "iterations": r.iterations, "converged": r.converged,
        "termination": r.termination.value, "gradient_norm": r.gradient_norm,
    }


def _cmd_solve(args) -> int:
    samples = read_samples(args.samples)
    seed = _seed(args)
    opts = SolveOptions(max_iterations=args.max_iterations, gradient_tolerance=args.gradient_tolerance)
    minima, results = multistart(
        samples, args.multistart, opts, seed=seed, jitter=args.jitter,
        cluster_threshold=args.threshold, merge_radius=args.merge_radius, return_results=True,
    )
    log.info("%d of %d starts converged; %d minima", sum(r.converged for r in results), len(results), len(minima))
    if args.verbose:
        print(dumps(with_schema({
            "seed": seed,
            "grid_density": args.multistart,
            "minima": [dict(zip(MINIMA_CSV_HEADER, row)) for row in minima_csv_rows(minima)],
            "starts": [_result_dict(r) for r in results],
        })))
    else:
        sys.stdout.write(csv_text(MINIMA_CSV_HEADER, minima_csv_rows(minima)))
    return 0


def _cmd_datagen(args) -> int:
    seed = _seed(args)
    config = DatagenConfig(
        truth=HingeTruth(args.theta1, args.theta2), count=args.count, noise_sigma=args.noise,
        seed=seed, magnitude_range=tuple(args.magnitude),
    )
    generated = generate(config)
    text = samples_to_json(generated.samples) + "\n" if args.format == "json" else samples_to_csv(generated.samples)
    sidecar = dumps(with_schema(generated.sidecar())) + "\n"
    invalid = sum(not is_valid(s) for s in generated.samples)
    if invalid:
        log.warning("%d of %d samples fail the validity condition", invalid, len(generated.samples))
    if args.out:
        prefix = Path(args.out)
        if args.out_dir is not None and not prefix.is_absolute():
            prefix = args.out_dir / prefix
        data_path = prefix.with_name(prefix.name + "." + args.format)
        data_path.write_text(text)
        prefix.with_name(prefix.name + ".truth.json").write_text(sidecar)
        log.info("wrote %s", data_path)
    else:
        sys.stdout.write(text)
        _side_file(args, "datagen.truth.json", sidecar)
    return 0


COMMANDS = {
    "eval": _cmd_eval,
    "grid": _cmd_grid,
    "curve": _cmd_curve,
    "patterns": _cmd_patterns,
    "pair": _cmd_pair,
    "solve": _cmd_solve,
    "datagen": _cmd_datagen,
}


def _configure_logging(quiet: bool) -> None:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    log.handlers[:] = [handler]
    log.propagate = False
    log.setLevel(logging.ERROR if quiet else logging.INFO)


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv`` and execute; returns the process exit code."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _configure_logging(args.quiet)
    try:
        if args.out_dir is not None:
            args.out_dir.mkdir(parents=True, exist_ok=True)
        return COMMANDS[args.command](args)
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except (HingeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
