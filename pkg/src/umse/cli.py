"""Command-line interface: ``umse metrics|simulate|subsample|experiment``.

Results go to standard output as CSV with a fixed header. Failures print a
single ``umse: error: <category>: <message>`` line on standard error and
exit non-zero (2 for usage errors, 1 for everything else).
"""

from __future__ import annotations

import argparse
import csv
import os
import sys

import numpy as np

from . import __version__
from .bootstrap import BootstrapConfig, bootstrap_ci
from .core import mean, mse_avg, psnr, se_per_pixel, use_per_pixel, UndefinedMetricError
from .experiments import format_value, load_config, run_experiment, write_report, write_rows
from .formats import RasterFormat, read_image, write_image
from .grid import ReferenceSet, ShapeError, as_array
from .rng import derive_seed
from .subsample import ROLES, SubsampleMode, apply_assignment, crop_to_even, spatial_subsample
from .synth import NoiseModel, add_noise, make_pattern, make_reference_set, parse_denoiser

UMSE_COLUMNS = [
    "scope",
    "n",
    "umse",
    "upsnr",
    "valid",
    "peak",
    "ci_umse_low",
    "ci_umse_high",
    "ci_upsnr_low",
    "ci_upsnr_high",
    "ci_excluded",
]
MSE_COLUMNS = ["n", "mse", "psnr", "valid", "peak"]
AVG_COLUMNS = ["n", "m", "mse_avg", "psnr", "valid", "peak"]
ASSIGNMENT_COLUMNS = ["block_row", "block_col", "y", "a", "b", "c"]
EXTENSIONS = {RasterFormat.F32: ".f32", RasterFormat.PGM8: ".pgm", RasterFormat.PGM16: ".pgm"}


class CliError(Exception):
    def __init__(self, category: str, message: str, code: int = 1):
        super().__init__(message)
        self.category = category
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", message, code=2)


def _emit(rows, columns, out=None) -> None:
    writer = csv.writer(out or sys.stdout, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(c)) for c in columns])


def _split(value: str) -> list[str]:
    return [p for p in value.split(",") if p]


def _psnr_or_none(value: float, peak: float):
    try:
        return psnr(value, peak), True
    except UndefinedMetricError:
        return None, False


def _umse_row(scope, values: np.ndarray, peak: float, boot) -> dict:
    value = mean(values)
    db, valid = _psnr_or_none(value, peak)
    row = {"scope": scope, "n": values.size, "umse": value, "upsnr": db, "valid": valid, "peak": peak}
    if boot is not None:
        result = bootstrap_ci(values, peak, boot)
        row.update(ci_umse_low=result.ci_umse.low, ci_umse_high=result.ci_umse.high, ci_excluded=result.excluded)
        if result.ci_upsnr is not None:
            row.update(ci_upsnr_low=result.ci_upsnr.low, ci_upsnr_high=result.ci_upsnr.high)
    return row


def _boot_config(args):
    if args.bootstrap is None:
        if args.alpha is not None:
            raise CliError("usage", "--alpha needs --bootstrap K", code=2)
        return None
    alpha = 0.05 if args.alpha is None else args.alpha
    try:
        return BootstrapConfig(args.bootstrap, alpha, args.seed)
    except ValueError as exc:
        raise CliError("usage", str(exc), code=2) from None


def _require_peak(args, what: str) -> float:
    if args.peak is None:
        raise CliError("usage", f"--peak is required for {what}", code=2)
    if not args.peak > 0:
        raise CliError("usage", "--peak must be positive", code=2)
    return args.peak


def cmd_metrics(args) -> int:
    modes = [
        args.clean is not None,
        args.ref_a is not None or args.ref_b is not None or args.ref_c is not None,
        args.noisy is not None,
        args.avg_refs is not None,
    ]
    if sum(modes) != 1:
        raise CliError("usage", "choose exactly one of --clean, --ref-a/--ref-b/--ref-c, --noisy, --avg-refs", code=2)

    if args.avg_refs is not None:
        refs = [read_image(p) for p in _split(args.avg_refs)]
        f = read_image(args.denoised)
        value = mse_avg(refs, f)
        row = {"n": f.size, "m": len(refs), "mse_avg": value, "peak": args.peak}
        if args.peak is not None:
            row["psnr"], row["valid"] = _psnr_or_none(value, _require_peak(args, "PSNR"))
        _emit([row], AVG_COLUMNS)
        return 0

    peak = _require_peak(args, "PSNR-family metrics")
    if args.clean is not None:
        values = se_per_pixel(read_image(args.clean), read_image(args.denoised))
        value = mean(values)
        db, valid = _psnr_or_none(value, peak)
        _emit([{"n": values.size, "mse": value, "psnr": db, "valid": valid, "peak": peak}], MSE_COLUMNS)
        return 0

    boot = _boot_config(args)
    if args.noisy is not None:
        if args.subsample is None:
            raise CliError("usage", "--noisy needs --subsample det|rand", code=2)
        noisy = read_image(args.noisy)
        if args.crop:
            noisy = crop_to_even(noisy)
        split = spatial_subsample(noisy, args.subsample, args.seed)
        f = as_array(read_image(args.denoised))
        if f.shape == noisy.shape:
            # full-resolution output: keep the pixels at Y's block sites
            f = apply_assignment(f, split.assignment)[0]
        elif f.shape != split.sub_y.shape:
            raise ShapeError(
                f"denoised image {f.shape} matches neither the noisy image {noisy.shape} "
                f"nor its sub-images {split.sub_y.shape}"
            )
        values = use_per_pixel(split.reference_set(), f)
        _emit([_umse_row("all", values, peak, boot)], UMSE_COLUMNS)
        return 0

    if None in (args.ref_a, args.ref_b, args.ref_c):
        raise CliError("usage", "--ref-a, --ref-b and --ref-c must all be given", code=2)
    paths = [_split(p) for p in (args.denoised, args.ref_a, args.ref_b, args.ref_c)]
    if len({len(p) for p in paths}) != 1:
        raise CliError("usage", "--denoised and --ref-* need the same number of comma-separated files", code=2)
    chunks = []
    for d, a, b, c in zip(*paths):
        f = read_image(d)
        # the noisy input itself is not needed for the estimate
        refs = ReferenceSet(f, read_image(a), read_image(b), read_image(c))
        chunks.append(use_per_pixel(refs, f))
    rows = []
    if len(chunks) == 1:
        rows.append(_umse_row("all", chunks[0], peak, boot))
    else:
        for i, values in enumerate(chunks):
            image_boot = None if boot is None else BootstrapConfig(boot.resamples_k, boot.alpha, derive_seed(boot.seed, i))
            rows.append(_umse_row(str(i), values, peak, image_boot))
        rows.append(_umse_row("pooled", np.concatenate(chunks), peak, boot))
    _emit(rows, UMSE_COLUMNS)
    return 0


def _output_path(out_dir: str, stem: str, fmt: RasterFormat) -> str:
    return os.path.join(out_dir, stem + EXTENSIONS[fmt])


def cmd_simulate(args) -> int:
    model = NoiseModel.parse(args.model)
    fmt = RasterFormat(args.format)
    if args.clean is not None:
        clean = read_image(args.clean)
    else:
        clean = make_pattern(args.pattern, seed=derive_seed(args.seed, "clean"))
    os.makedirs(args.out, exist_ok=True)
    outputs = {}
    if args.pattern is not None:
        outputs["clean"] = clean
    if args.single:
        outputs["noisy"] = add_noise(clean, model, args.seed)
        source = outputs["noisy"]
    else:
        refs = make_reference_set(clean, model, args.seed)
        outputs.update(y=refs.input_y, a=refs.ref_a, b=refs.ref_b, c=refs.ref_c)
        source = refs.input_y
    if args.denoiser is not None:
        outputs["denoised"] = parse_denoiser(args.denoiser)(source)
    rows = []
    for stem, grid in outputs.items():
        path = _output_path(args.out, stem, fmt)
        write_image(grid, path, fmt)
        rows.append({"role": stem, "path": path, "width": grid.width, "height": grid.height})
    _emit(rows, ["role", "path", "width", "height"])
    return 0


def cmd_subsample(args) -> int:
    image = read_image(args.input)
    if args.crop:
        image = crop_to_even(image)
    split = spatial_subsample(image, args.mode, args.seed)
    fmt = RasterFormat(args.format)
    os.makedirs(args.out, exist_ok=True)
    rows = []
    for role, grid in zip(ROLES, split.subimages()):
        path = _output_path(args.out, role, fmt)
        write_image(grid, path, fmt)
        rows.append({"role": role, "path": path, "width": grid.width, "height": grid.height})
    assignment = split.assignment
    table = [
        {"block_row": i, "block_col": j, **{role: int(assignment[i, j, k]) for k, role in enumerate(ROLES)}}
        for i in range(assignment.shape[0])
        for j in range(assignment.shape[1])
    ]
    path = os.path.join(args.out, "assignment.csv")
    write_rows(path, table, ASSIGNMENT_COLUMNS)
    rows.append({"role": "assignment", "path": path, "width": assignment.shape[1], "height": assignment.shape[0]})
    _emit(rows, ["role", "path", "width", "height"])
    return 0


def cmd_experiment(args) -> int:
    config = load_config(args.config)
    report = run_experiment(config)
    written = write_report(report, args.out)
    summary = {"kind": report.kind.value, **report.summary}
    _emit([summary], list(summary))
    for path in written:
        print(f"wrote {path}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="umse", description="Unsupervised denoising metrics from noisy references.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("metrics", help="compute MSE/PSNR, uMSE/uPSNR or MSE_avg")
    p.add_argument("--denoised", required=True, help="denoised image (comma-separated list with --ref-*)")
    p.add_argument("--clean", help="clean image: supervised MSE/PSNR")
    p.add_argument("--ref-a")
    p.add_argument("--ref-b")
    p.add_argument("--ref-c")
    p.add_argument("--noisy", help="single noisy image to split into references")
    p.add_argument("--subsample", choices=[m.value for m in SubsampleMode])
    p.add_argument("--crop", action="store_true", help="crop odd dimensions before subsampling")
    p.add_argument("--avg-refs", help="comma-separated noisy references for MSE_avg")
    p.add_argument("--peak", type=float, help="peak signal value M (e.g. 255)")
    p.add_argument("--bootstrap", type=int, metavar="K", help="bootstrap resamples for confidence intervals")
    p.add_argument("--alpha", type=float, help="1 - confidence level (default 0.05)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("simulate", help="write noisy copies of a clean image")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--clean", help="clean image file")
    src.add_argument("--pattern", help="builtin pattern, e.g. texture:128 or constant:64:100")
    p.add_argument("--model", required=True, help="gaussian:SIGMA or poisson")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--single", action="store_true", help="write one noisy image instead of y, a, b, c")
    p.add_argument("--denoiser", help="also write a baseline denoising: identity, gaussian:S or box:R")
    p.add_argument("--format", default="f32", choices=[f.value for f in RasterFormat])
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("subsample", help="split a noisy image into four half-size references")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--mode", default="det", choices=[m.value for m in SubsampleMode])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--crop", action="store_true")
    p.add_argument("--format", default="f32", choices=[f.value for f in RasterFormat])
    p.set_defaults(func=cmd_subsample)

    p = sub.add_parser("experiment", help="run a Monte Carlo experiment from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CliError as exc:
        _fail(exc.category, str(exc))
        return exc.code
    except ShapeError as exc:
        _fail("shape", str(exc))
    except FileNotFoundError as exc:
        _fail("io", f"{exc.filename}: file not found")
    except OSError as exc:
        _fail("io", str(exc))
    except ValueError as exc:
        _fail("input", str(exc))
    return 1


def _fail(category: str, message: str) -> None:
    print(f"umse: error: {category}: {' '.join(message.split())}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
