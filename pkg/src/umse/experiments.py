"""Monte Carlo checks of the estimators' statistical behaviour.

Each ``run_*`` function takes an :class:`ExperimentConfig` and returns an
:class:`ExperimentReport` with three tables:

* ``summary``: one row of headline statistics,
* ``points``: one row per sweep point (pixel count, m, smoothing level, lag),
* ``trials``: one row per Monte Carlo trial with the raw estimates.

Trial ``t`` draws from ``generator(seed, <stream>, t)``, so results depend
only on the config, never on the order trials are evaluated in.
"""

from __future__ import annotations

import csv
import enum
import math
import os
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import stats

from .bootstrap import BootstrapConfig, bootstrap_ci
from .core import mean, use_values
from .formats import read_image
from .grid import as_array, check_same_shape
from .rng import derive_seed, generator
from .subsample import BLOCK_OFFSETS, SubsampleMode, apply_assignment, random_assignment, spatial_subsample
from .synth import NoiseModel, gaussian_smooth, make_pattern, parse_denoiser

LOW_POWER_TRIALS = 100


class ExperimentKind(str, enum.Enum):
    UNBIASEDNESS = "unbiasedness"
    CONSISTENCY_SLOPE = "consistency_slope"
    NORMALITY = "normality"
    COVERAGE = "coverage"
    AVG_BASELINE_BIAS = "avg_baseline_bias"
    SUBSAMPLING_BIAS_SWEEP = "subsampling_bias_sweep"
    LAG_CORRELATION = "lag_correlation"


@dataclass(frozen=True)
class ExperimentConfig:
    kind: ExperimentKind
    clean: str = "texture:128"
    noise: NoiseModel = NoiseModel.gaussian(55.0)
    denoiser: str = "gaussian:2"
    trials: int = 1000
    pixel_counts: tuple[int, ...] = ()
    bootstrap: Optional[BootstrapConfig] = None
    peak: float = 255.0
    seed: int = 0
    # avg_baseline_bias
    m_values: tuple[int, ...] = (1, 3, 10, 100)
    avg_m_max: int = 2000
    avg_search_trials: int = 8
    # subsampling_bias_sweep, and coverage with references=subsample
    smoothing: tuple[float, ...] = (0.0, 1.0, 2.0, 4.0)
    subsample_mode: SubsampleMode = SubsampleMode.DETERMINISTIC
    references: str = "independent"
    # lag_correlation
    frames: int = 16
    max_lag: int = 5
    axis: str = "horizontal"

    def __post_init__(self):
        object.__setattr__(self, "kind", ExperimentKind(self.kind))
        object.__setattr__(self, "subsample_mode", SubsampleMode(self.subsample_mode))
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.kind is ExperimentKind.CONSISTENCY_SLOPE and not self.pixel_counts:
            raise ValueError("consistency_slope needs pixel_counts")
        if any(n < 1 for n in self.pixel_counts):
            raise ValueError("pixel_counts must be positive")
        if not self.peak > 0:
            raise ValueError("peak must be positive")
        if any(m < 1 for m in self.m_values) or not self.m_values:
            raise ValueError("m_values must be positive integers")
        if any(s < 0 for s in self.smoothing) or not self.smoothing:
            raise ValueError("smoothing levels must be >= 0")
        if self.references not in ("independent", "subsample"):
            raise ValueError("references must be 'independent' or 'subsample'")
        if self.axis not in ("horizontal", "vertical"):
            raise ValueError("axis must be 'horizontal' or 'vertical'")
        if self.frames < 2 or self.max_lag < 1:
            raise ValueError("lag_correlation needs frames >= 2 and max_lag >= 1")
        if self.kind is ExperimentKind.COVERAGE and self.bootstrap is None:
            object.__setattr__(self, "bootstrap", BootstrapConfig(seed=derive_seed(self.seed, "bootstrap")))


@dataclass
class ExperimentReport:
    kind: ExperimentKind
    summary: dict
    points: list[dict] = field(default_factory=list)
    trials: list[dict] = field(default_factory=list)

    def point_column(self, name: str) -> np.ndarray:
        return np.array([row[name] for row in self.points], dtype=float)

    def trial_column(self, name: str) -> np.ndarray:
        return np.array([row[name] for row in self.trials], dtype=float)


# --- shared pieces -----------------------------------------------------------


def load_clean(config: ExperimentConfig) -> np.ndarray:
    source = config.clean
    if os.path.exists(source):
        return as_array(read_image(source))
    return as_array(make_pattern(source, seed=derive_seed(config.seed, "clean")))


def make_denoiser(spec: str) -> Callable[[np.ndarray], np.ndarray]:
    fn = parse_denoiser(spec)
    return lambda arr: as_array(fn(arr))


def frozen_denoised(config: ExperimentConfig, clean: np.ndarray) -> np.ndarray:
    """Denoise one noisy draw of ``clean``; the result stays fixed across trials."""
    if config.denoiser.startswith("file:"):
        f = as_array(read_image(config.denoiser[5:]))
        check_same_shape(f, clean)
        return f
    config.noise.check(clean)
    noisy = config.noise.sample(clean, generator(config.seed, "input"))
    return make_denoiser(config.denoiser)(noisy)


def draw_umse(clean: np.ndarray, f: np.ndarray, model: NoiseModel, rng: np.random.Generator) -> np.ndarray:
    """Per-pixel uSE terms for freshly drawn references a, b, c."""
    a = model.sample(clean, rng)
    b = model.sample(clean, rng)
    c = model.sample(clean, rng)
    return use_values(a, b, c, f)


def sq_error(x: np.ndarray, f: np.ndarray) -> float:
    return mean((x - f) ** 2)


def _z(mean_value: float, target: float, se: float) -> float:
    if se == 0:
        return 0.0 if mean_value == target else math.copysign(math.inf, mean_value - target)
    return (mean_value - target) / se


def _sample_stats(values: np.ndarray) -> tuple[float, float, float]:
    """Mean, sample std (ddof=1) and standard error of the mean."""
    m = float(np.mean(values))
    sd = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
    return m, sd, sd / math.sqrt(values.size)


def _pixel_subset(config: ExperimentConfig, clean: np.ndarray, f: np.ndarray, n: int):
    if n > clean.size:
        raise ValueError(f"pixel count {n} exceeds the {clean.size} pixels of {config.clean}")
    return clean.ravel()[:n], f.ravel()[:n]


def _umse_trials(clean, f, config, stream, trials) -> np.ndarray:
    out = np.empty(trials)
    for t in range(trials):
        out[t] = mean(draw_umse(clean, f, config.noise, generator(config.seed, *stream, t)))
    return out


# --- experiments ---------------------------------------------------------------


def run_unbiasedness(config: ExperimentConfig) -> ExperimentReport:
    clean = load_clean(config)
    config.noise.check(clean)
    f = frozen_denoised(config, clean)
    true_mse = sq_error(clean, f)
    values = _umse_trials(clean, f, config, ("unbiasedness",), config.trials)
    m, sd, se = _sample_stats(values)
    summary = {
        "n": clean.size,
        "trials": config.trials,
        "true_mse": true_mse,
        "mean_umse": m,
        "std_umse": sd,
        "se": se,
        "z": _z(m, true_mse, se),
    }
    trials = [{"trial": t, "umse": v} for t, v in enumerate(values)]
    return ExperimentReport(config.kind, summary, trials=trials)


def loglog_slope(ns: Sequence[int], stds: Sequence[float]) -> tuple[Optional[float], Optional[float]]:
    """Least-squares slope and intercept of log10(std) against log10(n)."""
    if len(set(ns)) < 2:
        return None, None
    slope, intercept = np.polyfit(np.log10(ns), np.log10(stds), 1)
    return float(slope), float(intercept)


def run_consistency_slope(config: ExperimentConfig) -> ExperimentReport:
    clean = load_clean(config)
    config.noise.check(clean)
    f = frozen_denoised(config, clean)
    points, trials, stds = [], [], []
    for n in config.pixel_counts:
        x, fn = _pixel_subset(config, clean, f, n)
        values = _umse_trials(x, fn, config, ("consistency", n), config.trials)
        m, sd, _ = _sample_stats(values)
        stds.append(sd)
        points.append({"n": n, "true_mse": sq_error(x, fn), "mean_umse": m, "std_umse": sd, "var_umse": sd * sd})
        trials.extend({"n": n, "trial": t, "umse": v} for t, v in enumerate(values))
    slope, intercept = loglog_slope(config.pixel_counts, stds)
    summary = {"trials": config.trials, "points": len(points), "slope": slope, "intercept": intercept}
    return ExperimentReport(config.kind, summary, points, trials)


def ks_normal(values: np.ndarray) -> float:
    """KS distance between standardized ``values`` and the standard normal."""
    z = (values - values.mean()) / values.std(ddof=1)
    return float(stats.kstest(z, "norm").statistic)


def run_normality(config: ExperimentConfig) -> ExperimentReport:
    clean = load_clean(config)
    config.noise.check(clean)
    f = frozen_denoised(config, clean)
    counts = config.pixel_counts or (clean.size,)
    points, trials = [], []
    for n in counts:
        x, fn = _pixel_subset(config, clean, f, n)
        values = _umse_trials(x, fn, config, ("normality", n), config.trials)
        points.append(
            {
                "n": n,
                "ks_distance": ks_normal(values),
                "skewness": float(stats.skew(values)),
                "excess_kurtosis": float(stats.kurtosis(values)),
            }
        )
        trials.extend({"n": n, "trial": t, "umse": v} for t, v in enumerate(values))
    largest = max(points, key=lambda p: p["n"])
    summary = {
        "trials": config.trials,
        "low_power": config.trials < LOW_POWER_TRIALS,
        "n": largest["n"],
        "ks_distance": largest["ks_distance"],
        "skewness": largest["skewness"],
        "excess_kurtosis": largest["excess_kurtosis"],
    }
    return ExperimentReport(config.kind, summary, points, trials)


def subsampled_trial(
    clean: np.ndarray,
    model: NoiseModel,
    denoise: Callable[[np.ndarray], np.ndarray],
    mode: SubsampleMode,
    rng: np.random.Generator,
    assign_seed: int,
) -> tuple[float, np.ndarray]:
    """One noisy draw of a 2N x 2N image, split into Y, A, B, C.

    Returns the true MSE of ``denoise(Y)`` against the clean pixels at Y's
    block sites, and the uSE terms from A, B, C.
    """
    noisy = model.sample(clean, rng)
    if mode is SubsampleMode.DETERMINISTIC:
        y, a, b, c = (noisy[dr::2, dc::2] for dr, dc in BLOCK_OFFSETS)
        clean_y = clean[0::2, 0::2]
    else:
        assignment = random_assignment(clean.shape[0] // 2, clean.shape[1] // 2, assign_seed)
        y, a, b, c = apply_assignment(noisy, assignment)
        clean_y = apply_assignment(clean, assignment)[0]
    f = denoise(y)
    return sq_error(clean_y, f), use_values(a, b, c, f)


def run_coverage(config: ExperimentConfig) -> ExperimentReport:
    clean = load_clean(config)
    config.noise.check(clean)
    boot = config.bootstrap
    subsampled = config.references == "subsample"
    if subsampled:
        denoise = make_denoiser(config.denoiser)
        if clean.shape[0] % 2 or clean.shape[1] % 2:
            raise ValueError("subsampled references need an even-sized clean image")
    else:
        f = frozen_denoised(config, clean)
        fixed_mse = sq_error(clean, f)
    hits = hits_db = defined_db = 0
    widths = []
    trials = []
    for t in range(config.trials):
        rng = generator(config.seed, "coverage", t)
        if subsampled:
            true_mse, values = subsampled_trial(
                clean, config.noise, denoise, config.subsample_mode, rng, derive_seed(config.seed, "assign", t)
            )
        else:
            true_mse, values = fixed_mse, draw_umse(clean, f, config.noise, rng)
        trial_boot = BootstrapConfig(boot.resamples_k, boot.alpha, derive_seed(boot.seed, t))
        result = bootstrap_ci(values, config.peak, trial_boot)
        inside = true_mse in result.ci_umse
        hits += inside
        widths.append(result.ci_umse.width)
        row = {
            "trial": t,
            "true_mse": true_mse,
            "umse": mean(values),
            "ci_low": result.ci_umse.low,
            "ci_high": result.ci_umse.high,
            "covered": inside,
        }
        if result.ci_upsnr is not None and true_mse > 0:
            defined_db += 1
            true_db = 10 * math.log10(config.peak**2 / true_mse)
            hits_db += true_db in result.ci_upsnr
        trials.append(row)
    coverage = hits / config.trials
    nominal = 1 - boot.alpha
    summary = {
        "trials": config.trials,
        "n": len(values),
        "resamples_k": boot.resamples_k,
        "alpha": boot.alpha,
        "nominal": nominal,
        "coverage": coverage,
        "binomial_se": math.sqrt(coverage * (1 - coverage) / config.trials),
        "z": (coverage - nominal) / math.sqrt(nominal * (1 - nominal) / config.trials),
        "coverage_upsnr": hits_db / defined_db if defined_db else None,
        "mean_width": float(np.mean(widths)),
        "references": config.references,
    }
    return ExperimentReport(config.kind, summary, trials=trials)


def _avg_error_curve(clean, f, config, true_mse, m_max, trials) -> np.ndarray:
    """Mean over trials of |MSE_avg(m) - MSE| for m = 1..m_max (running averages)."""
    curve = np.zeros(m_max)
    for t in range(trials):
        rng = generator(config.seed, "avg-search", t)
        total = np.zeros_like(clean)
        for m in range(1, m_max + 1):
            total += config.noise.sample(clean, rng)
            curve[m - 1] += abs(sq_error(total / m, f) - true_mse)
    return curve / trials


def run_avg_baseline_bias(config: ExperimentConfig) -> ExperimentReport:
    clean = load_clean(config)
    config.noise.check(clean)
    f = frozen_denoised(config, clean)
    true_mse = sq_error(clean, f)
    noise_var = mean(config.noise.variance(clean))
    points, trials = [], []
    for m in config.m_values:
        bias = np.empty(config.trials)
        for t in range(config.trials):
            rng = generator(config.seed, "avg", m, t)
            total = np.zeros_like(clean)
            for _ in range(m):
                total += config.noise.sample(clean, rng)
            bias[t] = sq_error(total / m, f) - true_mse
        b, _, se = _sample_stats(bias)
        analytic = noise_var / m
        points.append({"m": m, "bias": b, "se": se, "analytic_bias": analytic, "z": _z(b, analytic, se)})
        trials.extend({"m": m, "trial": t, "bias": v} for t, v in enumerate(bias))

    umse_err = np.abs(_umse_trials(clean, f, config, ("avg-umse",), config.trials) - true_mse)
    umse_typical = float(np.mean(umse_err))
    search = min(config.avg_search_trials, config.trials)
    curve = _avg_error_curve(clean, f, config, true_mse, config.avg_m_max, search)
    matched = np.nonzero(curve <= umse_typical)[0]
    summary = {
        "n": clean.size,
        "trials": config.trials,
        "true_mse": true_mse,
        "noise_variance": noise_var,
        "umse_mean_abs_error": umse_typical,
        "m_match": int(matched[0]) + 1 if matched.size else None,
        "m_searched": config.avg_m_max,
        "max_abs_z": max(abs(p["z"]) for p in points),
    }
    return ExperimentReport(config.kind, summary, points, trials)


def reference_relative_rmse(clean) -> float:
    """RMS difference between the four clean sub-images, relative to the image RMS.

    The deterministic decomposition is used and all six sub-image pairs are
    pooled. Zero for any image that is constant on each 2x2 block.
    """
    arr = as_array(clean)
    rms = math.sqrt(mean(arr * arr))
    if rms == 0:
        raise ValueError("relative RMSE undefined for an all-zero image")
    subs = [as_array(s) for s in spatial_subsample(arr).subimages()]
    sq = [mean((subs[p] - subs[q]) ** 2) for p in range(4) for q in range(p + 1, 4)]
    return math.sqrt(sum(sq) / len(sq)) / rms


def run_subsampling_bias_sweep(config: ExperimentConfig) -> ExperimentReport:
    """Subsampling bias against clean-image smoothness.

    Trial ``t`` reuses the same noise stream at every smoothing level so the
    curves differ only through the clean image.
    """
    base = load_clean(config)
    if base.shape[0] % 2 or base.shape[1] % 2:
        raise ValueError("subsampling sweep needs an even-sized clean image")
    denoise = make_denoiser(config.denoiser)
    points, trials = [], []
    for level in config.smoothing:
        clean = base if level == 0 else as_array(gaussian_smooth(base, level))
        config.noise.check(clean)
        diffs = np.empty(config.trials)
        for t in range(config.trials):
            true_mse, values = subsampled_trial(
                clean,
                config.noise,
                denoise,
                config.subsample_mode,
                generator(config.seed, "sweep", t),
                derive_seed(config.seed, "assign", t),
            )
            estimate = mean(values)
            diffs[t] = estimate - true_mse
            trials.append({"smoothing": level, "trial": t, "umse": estimate, "mse": true_mse, "diff": diffs[t]})
        d, _, se = _sample_stats(diffs)
        points.append(
            {
                "smoothing": level,
                "relative_rmse": reference_relative_rmse(clean),
                "median_abs_diff": float(np.median(np.abs(diffs))),
                "mean_diff": d,
                "se": se,
                "z": _z(d, 0.0, se),
            }
        )
    rel = [p["relative_rmse"] for p in points]
    med = [p["median_abs_diff"] for p in points]
    summary = {
        "trials": config.trials,
        "levels": len(points),
        "relative_rmse_nonincreasing": _nonincreasing(rel),
        "median_abs_diff_nonincreasing": _nonincreasing(med),
    }
    return ExperimentReport(config.kind, summary, points, trials)


def _nonincreasing(values: Sequence[float]) -> bool:
    return all(b <= a for a, b in zip(values, values[1:]))


def lag_correlation(frames: Sequence, max_lag: int, axis: str = "horizontal") -> np.ndarray:
    """Pearson correlation of residual pixels ``j`` apart, for j = 1..max_lag.

    Residuals are the frames minus their pixel-wise mean across frames;
    pairs from all frames are pooled.
    """
    if len(frames) < 2:
        raise ValueError("lag correlation needs at least two frames")
    arrays = [as_array(f) for f in frames]
    check_same_shape(*arrays)
    stack = np.stack(arrays)
    if axis not in ("horizontal", "vertical"):
        raise ValueError("axis must be 'horizontal' or 'vertical'")
    dim = 2 if axis == "horizontal" else 1
    if not 1 <= max_lag < stack.shape[dim]:
        raise ValueError(f"max_lag must be in [1, {stack.shape[dim] - 1}]")
    resid = stack - stack.mean(axis=0)
    out = np.empty(max_lag)
    for j in range(1, max_lag + 1):
        if dim == 2:
            u, v = resid[:, :, :-j], resid[:, :, j:]
        else:
            u, v = resid[:, :-j, :], resid[:, j:, :]
        u = u.ravel() - u.mean()
        v = v.ravel() - v.mean()
        denom = math.sqrt(float(np.dot(u, u)) * float(np.dot(v, v)))
        if denom == 0:
            raise ValueError("degenerate variance: residuals are constant")
        out[j - 1] = float(np.dot(u, v)) / denom
    return out


def run_lag_correlation(config: ExperimentConfig) -> ExperimentReport:
    """Correlation-by-lag of simulated frames passed through the configured denoiser."""
    clean = load_clean(config)
    config.noise.check(clean)
    denoise = make_denoiser(config.denoiser)
    frames = [denoise(config.noise.sample(clean, generator(config.seed, "frame", i))) for i in range(config.frames)]
    corr = lag_correlation(frames, config.max_lag, config.axis)
    h, w = clean.shape
    points = []
    for j, r in enumerate(corr, start=1):
        pairs = config.frames * (h * (w - j) if config.axis == "horizontal" else (h - j) * w)
        points.append({"lag": j, "correlation": float(r), "pairs": pairs, "band": 4 / math.sqrt(pairs)})
    summary = {
        "frames": config.frames,
        "axis": config.axis,
        "lag1_correlation": float(corr[0]),
        "max_abs_correlation": float(np.max(np.abs(corr))),
    }
    return ExperimentReport(config.kind, summary, points)


RUNNERS = {
    ExperimentKind.UNBIASEDNESS: run_unbiasedness,
    ExperimentKind.CONSISTENCY_SLOPE: run_consistency_slope,
    ExperimentKind.NORMALITY: run_normality,
    ExperimentKind.COVERAGE: run_coverage,
    ExperimentKind.AVG_BASELINE_BIAS: run_avg_baseline_bias,
    ExperimentKind.SUBSAMPLING_BIAS_SWEEP: run_subsampling_bias_sweep,
    ExperimentKind.LAG_CORRELATION: run_lag_correlation,
}


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    return RUNNERS[config.kind](config)


# --- config files and CSV reports -------------------------------------------------

_INT_LISTS = {"pixel_counts", "m_values"}
_INTS = {"trials", "seed", "avg_m_max", "avg_search_trials", "frames", "max_lag"}


def parse_config(text: str) -> ExperimentConfig:
    """Parse ``key = value`` lines (``#`` starts a comment) into a config.

    Bootstrap settings use the keys ``bootstrap_k``, ``alpha`` and
    ``bootstrap_seed``; lists are comma separated.
    """
    raw = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"line {lineno}: expected key = value")
        key = key.strip().lower()
        if key in raw:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value.strip()
    if "kind" not in raw:
        raise ValueError("config must set kind")

    kwargs = {}
    boot = {}
    for key, value in raw.items():
        if key in _INT_LISTS:
            kwargs[key] = tuple(int(v) for v in value.split(",") if v.strip())
        elif key in _INTS:
            kwargs[key] = int(value)
        elif key == "smoothing":
            kwargs[key] = tuple(float(v) for v in value.split(",") if v.strip())
        elif key == "peak":
            kwargs[key] = float(value)
        elif key == "noise":
            kwargs[key] = NoiseModel.parse(value)
        elif key in ("kind", "clean", "denoiser", "subsample_mode", "references", "axis"):
            kwargs[key] = value
        elif key == "bootstrap_k":
            boot["resamples_k"] = int(value)
        elif key == "alpha":
            boot["alpha"] = float(value)
        elif key == "bootstrap_seed":
            boot["seed"] = int(value)
        else:
            raise ValueError(f"unknown config key {key!r}")
    if boot:
        boot.setdefault("seed", derive_seed(kwargs.get("seed", 0), "bootstrap"))
        kwargs["bootstrap"] = BootstrapConfig(**boot)
    return ExperimentConfig(**kwargs)


def load_config(path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def format_value(value) -> str:
    """Round-trippable CSV text: repr for floats, empty for missing values."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, enum.Enum):
        return str(value.value)
    return str(value)


def write_rows(path, rows: list[dict], columns: Optional[list[str]] = None) -> None:
    columns = columns or (list(rows[0]) if rows else [])
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(row.get(c)) for c in columns])


def write_report(report: ExperimentReport, out_dir) -> list[str]:
    """Write ``<kind>_summary.csv`` plus ``_points.csv``/``_trials.csv`` when non-empty."""
    os.makedirs(out_dir, exist_ok=True)
    name = report.kind.value
    written = []
    summary = {"kind": name, **report.summary}
    for suffix, rows in (("summary", [summary]), ("points", report.points), ("trials", report.trials)):
        if not rows:
            continue
        path = os.path.join(out_dir, f"{name}_{suffix}.csv")
        write_rows(path, rows)
        written.append(path)
    return written


__all__ = [
    "ExperimentConfig",
    "ExperimentKind",
    "ExperimentReport",
    "ks_normal",
    "lag_correlation",
    "load_config",
    "loglog_slope",
    "parse_config",
    "reference_relative_rmse",
    "run_avg_baseline_bias",
    "run_consistency_slope",
    "run_coverage",
    "run_experiment",
    "run_lag_correlation",
    "run_normality",
    "run_subsampling_bias_sweep",
    "run_unbiasedness",
    "subsampled_trial",
    "write_report",
]
