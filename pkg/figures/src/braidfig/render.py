"""Render braidc experiment CSVs into the standard comparison figures.

Consumes only the documented sweep schema (13 fixed columns); anything
else is rejected.  Rendering is deterministic for identical inputs: fixed
style, no timestamps in the output files.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

CSV_HEADER = ("model", "k", "hybrid", "method", "length", "samples",
              "mean_error", "stddev_error", "mean_phase_frac",
              "mean_elapsed_s", "nu", "noise_mode", "seed")

FIGURE_IDS = ("timing", "convergence", "compiler-compare", "model-compare",
              "phase-frac", "noise-only", "total-error")


class SchemaError(ValueError):
    """Input CSV does not match the experiments sweep schema."""


@dataclass(frozen=True)
class Row:
    model: str
    k: int
    hybrid: bool
    method: str
    length: int
    samples: int
    mean_error: float
    stddev_error: float
    mean_phase_frac: float
    mean_elapsed_s: float
    nu: float
    noise_mode: str
    seed: int


@dataclass
class FigureSpec:
    """One figure request: id, input CSVs, output image, scale flags."""

    figure: str
    csv_paths: list[str]
    out_path: str
    logx: bool = False
    logy: bool = False

    def __post_init__(self):
        if self.figure not in FIGURE_IDS:
            raise SchemaError(f"unknown figure id {self.figure!r}; "
                              f"expected one of {FIGURE_IDS}")
        if not self.csv_paths:
            raise SchemaError("at least one --csv input is required")


@dataclass
class RenderResult:
    """What was drawn, for callers and tests."""

    out_path: str
    n_rows: int
    n_series: int
    xlabel: str
    ylabel: str
    fit: tuple[float, float] | None = None


def load_rows(path: str) -> list[Row]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = tuple(next(reader))
        except StopIteration:
            raise SchemaError(f"{path}: empty file") from None
        if header != CSV_HEADER:
            raise SchemaError(f"{path}: header {header} does not match the "
                              f"sweep schema {CSV_HEADER}")
        rows = []
        for rec in reader:
            if len(rec) != len(CSV_HEADER):
                raise SchemaError(f"{path}: row with {len(rec)} fields")
            rows.append(Row(
                model=rec[0], k=int(rec[1]), hybrid=rec[2] == "true",
                method=rec[3], length=int(rec[4]), samples=int(rec[5]),
                mean_error=float(rec[6]), stddev_error=float(rec[7]),
                mean_phase_frac=float(rec[8]), mean_elapsed_s=float(rec[9]),
                nu=float(rec[10]), noise_mode=rec[11], seed=int(rec[12])))
    return rows


def _load_all(spec: FigureSpec) -> list[Row]:
    rows: list[Row] = []
    for path in spec.csv_paths:
        rows.extend(load_rows(path))
    if not rows:
        raise SchemaError("no data rows in the given CSV inputs")
    return rows


def suppression_coefficient(method: str) -> float:
    """Coefficient c carried in the method column as ``mc:c=<value>``."""
    if ":c=" not in method:
        raise SchemaError(f"method {method!r} carries no suppression "
                          "coefficient (expected 'mc:c=<value>')")
    return float(method.split(":c=", 1)[1])


def log_log_fit(xs, ys) -> tuple[float, float]:
    """Least-squares slope/intercept in log10-log10 coordinates."""
    lx, ly = np.log10(xs), np.log10(ys)
    slope, intercept = np.polyfit(lx, ly, 1)
    return float(slope), float(intercept)


def _style():
    plt.rcParams.update({
        "figure.figsize": (6.4, 4.4),
        "figure.dpi": 110,
        "axes.grid": True,
        "grid.alpha": 0.3,
        "lines.markersize": 5,
        "legend.fontsize": 8,
    })


def _series_label(parts) -> str:
    return ", ".join(str(p) for p in parts if p not in ("", None))


def _save(fig, spec: FigureSpec) -> None:
    kwargs = {}
    if spec.out_path.lower().endswith(".png"):
        kwargs["metadata"] = {"Software": None}  # no timestamps: deterministic
    fig.savefig(spec.out_path, bbox_inches="tight", **kwargs)
    plt.close(fig)


def _group(rows, key):
    groups: dict[tuple, list[Row]] = {}
    for row in rows:
        groups.setdefault(key(row), []).append(row)
    return dict(sorted(groups.items()))


def _errorbar_by_length(ax, groups, yattr, yerrattr=None):
    n = 0
    for key, grp in groups.items():
        grp = sorted(grp, key=lambda r: r.length)
        xs = [r.length for r in grp]
        ys = [getattr(r, yattr) for r in grp]
        yerr = [getattr(r, yerrattr) for r in grp] if yerrattr else None
        ax.errorbar(xs, ys, yerr=yerr, marker="o", capsize=2,
                    label=_series_label(key))
        n += 1
    return n


def render(spec: FigureSpec) -> RenderResult:
    """Draw one figure and write it to ``spec.out_path``.

    Raises :class:`SchemaError` (before any file is written) on malformed
    input or empty data.
    """
    rows = _load_all(spec)
    _style()
    fig, ax = plt.subplots()
    fit = None

    if spec.figure == "timing":
        groups = _group(rows, lambda r: (r.model, r.method))
        n = 0
        for key, grp in groups.items():
            grp = sorted(grp, key=lambda r: r.length)
            ax.plot([r.length for r in grp], [r.mean_elapsed_s for r in grp],
                    marker="o", label=_series_label(key))
            n += 1
        xlabel, ylabel = "braid word length l", "CPU time [s]"
        if not spec.logx and not spec.logy:
            ax.set_yscale("log")

    elif spec.figure in ("convergence", "model-compare"):
        groups = _group(rows, lambda r: (r.model, r.method, r.nu))
        n = _errorbar_by_length(ax, groups, "mean_error", "stddev_error")
        xlabel, ylabel = "braid word length l", "error d"

    elif spec.figure == "compiler-compare":
        groups = _group(rows, lambda r: (r.model, r.method, r.nu))
        n = _errorbar_by_length(ax, groups, "mean_error", "stddev_error")
        xlabel, ylabel = "braid word length l", "error d"
        exhaustive = [r for r in rows if r.method == "exhaustive"]
        if len(exhaustive) >= 2:
            slope, intercept = log_log_fit(
                [r.length for r in exhaustive],
                [r.mean_error for r in exhaustive])
            fit = (slope, intercept)
            xs = np.linspace(math.log10(min(r.length for r in rows)),
                             math.log10(max(r.length for r in rows)), 50)
            ax.plot(10 ** xs, 10 ** (slope * xs + intercept), "--",
                    label=f"exhaustive extrapolation (slope {slope:.3g})")
            n += 1
        ax.set_xscale("log")
        ax.set_yscale("log")

    elif spec.figure == "phase-frac":
        groups = _group(rows, lambda r: (r.model, r.length))
        n = 0
        for key, grp in groups.items():
            grp = sorted(grp, key=lambda r: suppression_coefficient(r.method))
            xs = [suppression_coefficient(r.method) for r in grp]
            ax.plot(xs, [r.mean_phase_frac for r in grp], marker="o",
                    label=_series_label(key))
            n += 1
        xlabel, ylabel = "acceptance parameter c", "N_phi/l"

    elif spec.figure == "noise-only":
        groups = _group(rows, lambda r: (r.model, r.noise_mode, r.length))
        n = 0
        for key, grp in groups.items():
            grp = sorted(grp, key=lambda r: r.nu)
            ax.errorbar([r.nu for r in grp], [r.mean_error for r in grp],
                        yerr=[r.stddev_error for r in grp], marker="o",
                        capsize=2, label=_series_label(key))
            n += 1
        ax.set_xscale("log")
        ax.set_yscale("log")
        xlabel, ylabel = "noise strength nu", "error d"

    elif spec.figure == "total-error":
        groups = _group(rows, lambda r: (r.model, r.nu))
        n = _errorbar_by_length(ax, groups, "mean_error", "stddev_error")
        xlabel, ylabel = "braid word length l", "error d"
        by_nu = _group(rows, lambda r: r.nu)
        if len(by_nu) > 1:
            # inset: error-minimising length per noise level
            inset = ax.inset_axes([0.58, 0.58, 0.38, 0.36])
            nus, argmins = [], []
            for nu, grp in by_nu.items():
                best = min(grp, key=lambda r: r.mean_error)
                nus.append(nu)
                argmins.append(best.length)
            inset.plot(nus, argmins, marker="s", color="tab:red")
            inset.set_xlabel("nu", fontsize=7)
            inset.set_ylabel("optimal l", fontsize=7)
            inset.tick_params(labelsize=6)
            inset.set_xscale("symlog", linthresh=1e-6)
        ax.set_yscale("log")

    if spec.logx:
        ax.set_xscale("log")
    if spec.logy:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.legend(loc="best")
    _save(fig, spec)
    return RenderResult(out_path=spec.out_path, n_rows=len(rows), n_series=n,
                        xlabel=xlabel, ylabel=ylabel, fit=fit)
