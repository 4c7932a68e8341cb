"""Gaussian mean-estimation sweep: true moments, exact moments, and bounds per n.

True moments come from Monte Carlo on the continuous model (closed-form population
risk); information measures and exact moments come from one shared quantized joint
per n.  Both the bin count and the replicate count ride along in the output so the
quantized/continuous split stays auditable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .distributions import (
    DEFAULT_ENUMERATION_CAP,
    DEFAULT_RANGE_SIGMAS,
    EnumerationCapError,
    GaussianSpec,
    quantize_gaussian,
)
from .information import build_joint, chi_square_information, mutual_information
from .kernels import mean_kernel
from .risk import LearningModel, gen_moments_exact, gen_moments_mc, truncated_square_loss
from . import bounds as bounds_mod


class GaussianConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")
    mean: float = 0.0
    variance: float = 1.0

    @field_validator("variance")
    @classmethod
    def _positive_variance(cls, v):
        if v <= 0:
            raise ValueError("variance must be positive")
        return v

    def to_spec(self) -> GaussianSpec:
        return GaussianSpec(mean=self.mean, variance=self.variance)


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    gaussian: GaussianConfig = Field(default_factory=GaussianConfig)
    c: float = 2.0 / 3.0
    n_values: list[int] = Field(default_factory=lambda: list(range(1, 9)))
    moments: list[int] = Field(default_factory=lambda: [1, 2, 3, 4])
    quant_bins: int = 7
    range_sigmas: float = DEFAULT_RANGE_SIGMAS
    mc_replicates: int = 1_000_000
    seed: int = 12345
    validity_mode: str = "relaxed"
    out_dir: str = "experiment_out"

    @field_validator("c")
    @classmethod
    def _positive_c(cls, v):
        if v <= 0:
            raise ValueError("truncation level c must be positive")
        return v

    @field_validator("n_values", "moments")
    @classmethod
    def _positive_entries(cls, v):
        if not v or any(x < 1 for x in v):
            raise ValueError("entries must be positive integers")
        return v

    @field_validator("quant_bins")
    @classmethod
    def _enough_bins(cls, v):
        if v < 2:
            raise ValueError("quant_bins must be >= 2")
        return v

    @field_validator("mc_replicates")
    @classmethod
    def _enough_replicates(cls, v):
        if v < 1:
            raise ValueError("mc_replicates must be >= 1")
        return v

    @field_validator("range_sigmas")
    @classmethod
    def _positive_range(cls, v):
        if v <= 0:
            raise ValueError("range_sigmas must be positive")
        return v

    @field_validator("validity_mode")
    @classmethod
    def _known_mode(cls, v):
        if v not in ("strict", "relaxed"):
            raise ValueError("validity_mode must be 'strict' or 'relaxed'")
        return v


@dataclass(frozen=True)
class ExperimentRow:
    n: int
    m: int
    true_moment: float
    true_stderr: float
    exact_moment: float | None
    info_chi2: float | None
    info_mi: float | None
    bound_chi2: float | None
    bound_mi: float | None
    bound_expected: float | None
    valid_strict: bool
    valid_relaxed: bool

    def to_dict(self) -> dict:
        return {
            "n": self.n, "m": self.m,
            "true_moment": self.true_moment, "true_stderr": self.true_stderr,
            "exact_moment": self.exact_moment,
            "info_chi2": self.info_chi2, "info_mi": self.info_mi,
            "bound_chi2": self.bound_chi2, "bound_mi": self.bound_mi,
            "bound_expected": self.bound_expected,
            "valid_strict": self.valid_strict, "valid_relaxed": self.valid_relaxed,
        }


def run_gaussian_mean_experiment(
    config: ExperimentConfig,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> list[ExperimentRow]:
    """Sweep n_values; per n share one quantized joint and one set of MC draws."""
    gaussian = config.gaussian.to_spec()
    loss = truncated_square_loss(config.c)
    kernel = mean_kernel()
    sigma = loss.sigma
    rows = []
    for n in config.n_values:
        quantized = quantize_gaussian(gaussian, config.quant_bins, config.range_sigmas)
        try:
            joint = build_joint(quantized, n, kernel, cap=cap)
            info_chi2 = chi_square_information(joint).value
            info_mi = mutual_information(joint).value
            exact = gen_moments_exact(
                LearningModel(quantized, n, kernel, loss), config.moments, cap
            )
        except EnumerationCapError:
            info_chi2 = info_mi = None
            exact = {}
        mc = gen_moments_mc(
            LearningModel(gaussian, n, kernel, loss),
            config.moments,
            config.mc_replicates,
            np.random.SeedSequence([config.seed, n]),
        )
        for m in config.moments:
            bound_chi2 = bound_mi = bound_expected = None
            valid_strict = valid_relaxed = False
            if info_chi2 is not None:
                chi2_report = bounds_mod.moment_bound_chi2(
                    sigma, n, m, info_chi2, config.validity_mode
                )
                bound_chi2 = chi2_report.value
                valid_strict = chi2_report.valid_strict
                valid_relaxed = chi2_report.valid_relaxed
                mi_value = bounds_mod.second_moment_bound_mi(sigma, n, info_mi).value
                if m == 2:
                    bound_mi = mi_value
                elif m == 1:
                    # |E gen| <= sqrt(E gen^2): first-moment column reuses the
                    # second-moment value through Jensen.
                    bound_mi = math.sqrt(mi_value)
                if m == 1:
                    bound_expected = bounds_mod.expected_gen_bound(
                        sigma, n, 2, info_chi2, config.validity_mode
                    ).value
            rows.append(ExperimentRow(
                n=n, m=m,
                true_moment=mc[m].value, true_stderr=mc[m].stderr,
                exact_moment=exact[m].value if m in exact else None,
                info_chi2=info_chi2, info_mi=info_mi,
                bound_chi2=bound_chi2, bound_mi=bound_mi,
                bound_expected=bound_expected,
                valid_strict=valid_strict, valid_relaxed=valid_relaxed,
            ))
    return sorted(rows, key=lambda r: (r.m, r.n))


CSV_HEADER = (
    "n,m,true_moment,true_stderr,exact_moment,info_chi2,info_mi,"
    "bound_chi2,bound_mi,bound_expected,valid_strict,valid_relaxed"
)


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return "%.10g" % value


def emit_csv(rows, path) -> str:
    """Write rows sorted by (m, n); floats at 10 significant digits."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [CSV_HEADER]
    for r in sorted(rows, key=lambda r: (r.m, r.n)):
        lines.append(",".join(_csv_cell(v) for v in (
            r.n, r.m, r.true_moment, r.true_stderr, r.exact_moment,
            r.info_chi2, r.info_mi, r.bound_chi2, r.bound_mi, r.bound_expected,
            r.valid_strict, r.valid_relaxed,
        )))
    path.write_text("\n".join(lines) + "\n")
    return str(path)


def parse_csv(text: str) -> list[dict]:
    """Inverse of emit_csv for round-trip checks; empty cells become None."""
    lines = text.strip().split("\n")
    if lines[0] != CSV_HEADER:
        raise ValueError("unexpected header")
    names = CSV_HEADER.split(",")
    out = []
    for line in lines[1:]:
        cells = line.split(",")
        row = {}
        for name, cell in zip(names, cells):
            if cell == "":
                row[name] = None
            elif name in ("n", "m"):
                row[name] = int(cell)
            elif name in ("valid_strict", "valid_relaxed"):
                row[name] = cell == "true"
            else:
                row[name] = float(cell)
        out.append(row)
    return out


_SERIES_STYLE = {
    "true": ("#222222", "3,0"),
    "chi2-bound": ("#1f77b4", "6,3"),
    "mi-bound": ("#d62728", "2,3"),
}

_WIDTH, _HEIGHT = 640, 420
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 64, 20, 24, 44


def _series_for(rows_m):
    series = [("true", [(r.n, r.true_moment, r.true_stderr) for r in rows_m])]
    if any(r.bound_chi2 is not None for r in rows_m):
        series.append(("chi2-bound", [
            (r.n, r.bound_chi2, 0.0) for r in rows_m if r.bound_chi2 is not None
        ]))
    if any(r.bound_mi is not None for r in rows_m):
        series.append(("mi-bound", [
            (r.n, r.bound_mi, 0.0) for r in rows_m if r.bound_mi is not None
        ]))
    return series


def _render_svg(m: int, series) -> str:
    xs = sorted({x for _, pts in series for x, _, _ in pts})
    positives = [v for _, pts in series for _, v, se in pts if v > 0]
    positives += [v - 2 * se for _, pts in series for _, v, se in pts if v - 2 * se > 0]
    positives += [v + 2 * se for _, pts in series for _, v, se in pts if v + 2 * se > 0]
    if not positives:
        raise ValueError("nothing to plot on a log axis")
    lo = math.floor(math.log10(min(positives)))
    hi = math.ceil(math.log10(max(positives)))
    if hi == lo:
        hi = lo + 1
    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B
    x_lo, x_hi = min(xs), max(xs)
    span = (x_hi - x_lo) or 1

    def px(x):
        return _MARGIN_L + (x - x_lo) / span * plot_w

    def py(v):
        return _MARGIN_T + (hi - math.log10(v)) / (hi - lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}" data-moment="{m}">',
        f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="#999999"/>',
    ]
    for k in range(lo, hi + 1):
        y = py(10.0**k)
        parts.append(
            f'<line x1="{_MARGIN_L}" y1="{y:.2f}" x2="{_MARGIN_L + plot_w}" y2="{y:.2f}" '
            'stroke="#dddddd"/>'
        )
        parts.append(
            f'<text x="{_MARGIN_L - 8}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-size="11">1e{k}</text>'
        )
    for x in xs:
        parts.append(
            f'<text x="{px(x):.2f}" y="{_HEIGHT - _MARGIN_B + 16}" text-anchor="middle" '
            f'font-size="11">{x}</text>'
        )
    parts.append(
        f'<text x="{_MARGIN_L + plot_w / 2:.2f}" y="{_HEIGHT - 8}" text-anchor="middle" '
        'font-size="12">n</text>'
    )
    for label, pts in series:
        color, dash = _SERIES_STYLE[label]
        drawable = [(x, v, se) for x, v, se in pts if v > 0]
        coords = " ".join(f"{px(x):.2f},{py(v):.2f}" for x, v, _ in drawable)
        data_x = " ".join(str(x) for x, _, _ in pts)
        data_y = " ".join("%.10g" % v for _, v, _ in pts)
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-dasharray="{dash}" '
            f'points="{coords}" data-series="{label}" data-x="{data_x}" data-y="{data_y}"/>'
        )
        if label == "true":
            for x, v, se in drawable:
                top, bottom = v + 2 * se, v - 2 * se
                if bottom <= 0:
                    bottom = min(positives)
                parts.append(
                    f'<line x1="{px(x):.2f}" y1="{py(top):.2f}" x2="{px(x):.2f}" '
                    f'y2="{py(bottom):.2f}" stroke="#777777" data-errorbar="{x}"/>'
                )
    for i, (label, _) in enumerate(series):
        color, _dash = _SERIES_STYLE[label]
        y = _MARGIN_T + 14 + 16 * i
        x = _MARGIN_L + plot_w - 130
        parts.append(f'<line x1="{x}" y1="{y - 4}" x2="{x + 22}" y2="{y - 4}" stroke="{color}"/>')
        parts.append(f'<text x="{x + 28}" y="{y}" font-size="11">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts)


def emit_svg_plots(rows, out_dir) -> list[str]:
    """One log-y plot per moment order, named gen_moment_m{m}.svg."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for m in sorted({r.m for r in rows}):
        rows_m = sorted((r for r in rows if r.m == m), key=lambda r: r.n)
        svg = _render_svg(m, _series_for(rows_m))
        path = out_dir / f"gen_moment_m{m}.svg"
        path.write_text(svg + "\n")
        paths.append(str(path))
    return paths
