"""Datasets (CSV) and plots (SVG) of the published figures.

Time axes:
  ninf-*, entropy       tau = alpha t, alpha the rescaled coupling (N -> inf)
  compare-*, order10-*  tau = sqrt(N) alpha t at N = 100 (alpha = 1/sqrt(N))
  error                 alpha t with the bare coupling alpha = 1, N = 100
Initial state: v+-(0) = 1/2 (v1 = 1) and v3(0) = 1 unless stated otherwise.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bloch import BlochVector, entropy
from .cumulants import Channel
from .errors import DomainError
from .exact import f3, f12, limit_fs
from .model import Method
from .reports import table_csv, write_text
from .solvers import SolverSpec, channel_transfer
from .svg import Curve, line_plot

FIGURE_IDS = ("ninf-vpm", "ninf-v3", "entropy", "compare-vpm", "compare-v3",
              "error", "order10-vpm", "order10-v3")

V_PM0 = 0.5
V3_0 = 1.0
COMPARE_N = 100
ENTROPY_STARTS = ((1.0, 1.0), (1.0, 0.5), (1.0, 0.0), (0.5, 0.5), (0.5, 0.0))


@dataclass
class FigureData:
    fig_id: str
    title: str
    x_name: str
    x: np.ndarray
    columns: dict[str, np.ndarray] = field(default_factory=dict)
    y_label: str = ""
    ylim: tuple[float, float] | None = None
    logx: bool = False
    logy: bool = False

    def table(self) -> dict[str, np.ndarray]:
        return {self.x_name: self.x, **self.columns}

    def svg(self) -> str:
        curves = [Curve(k, v) for k, v in self.columns.items()]
        return line_plot(self.x, curves, title=self.title, x_label=self.x_name,
                         y_label=self.y_label, ylim=self.ylim, logx=self.logx, logy=self.logy)


def thread_cap() -> int | None:
    raw = os.environ.get("SPINSTAR_THREADS")
    if not raw:
        return None
    try:
        return max(1, int(raw))
    except ValueError:
        return None


def _channel(fig_id: str) -> Channel:
    return Channel.V3 if fig_id.endswith("v3") else Channel.VPM


def _scale(ch: Channel) -> float:
    return V3_0 if ch is Channel.V3 else V_PM0


def ninf(ch: Channel, tau_max: float = 3.0, points: int = 301) -> FigureData:
    tau = np.linspace(0.0, tau_max, points)
    fn = f3 if ch is Channel.V3 else f12
    lim12, lim3 = limit_fs(1.0, tau)
    s = _scale(ch)
    label = "v3" if ch is Channel.V3 else "v+-"
    fig = FigureData(f"ninf-{ch.value}", f"{label}: N=20, N=200 vs N->inf", "tau", tau,
                     y_label=label, ylim=(-0.5, 1.05) if ch is Channel.V3 else (0.0, 0.55))
    for n in (20, 200):
        fig.columns[f"exact_N{n}"] = s * fn(n, 1 / math.sqrt(n), tau)
    fig.columns["limit"] = s * (lim3 if ch is Channel.V3 else lim12)
    return fig


def entropy_figure(tau_max: float = 4.0, points: int = 401) -> FigureData:
    tau = np.linspace(0.0, tau_max, points)
    g12, g3 = limit_fs(1.0, tau)
    fig = FigureData("entropy", "entropy, N->inf", "tau", tau, y_label="S (nats)", ylim=(0.0, 0.75))
    for r0, v30 in ENTROPY_STARTS:
        v0 = BlochVector(math.sqrt(max(r0**2 - v30**2, 0.0)), 0.0, v30)
        r = np.sqrt((g12 * v0.v1) ** 2 + (g3 * v0.v3) ** 2)
        fig.columns[f"S_r{r0:g}_v3{v30:g}"] = entropy(np.minimum(r, 1.0))
    fig.columns["S_max"] = np.full_like(tau, math.log(2))
    return fig


def _compare(fig_id: str, ch: Channel, specs: dict[str, SolverSpec], tau_max: float,
             points: int, ylim) -> FigureData:
    tau = np.linspace(0.0, tau_max, points)
    alpha = 1 / math.sqrt(COMPARE_N)
    s = _scale(ch)
    label = "v3" if ch is Channel.V3 else "v+-"
    fig = FigureData(fig_id, f"{label}, N={COMPARE_N}: " + ", ".join(specs), "tau", tau,
                     y_label=label, ylim=ylim)
    for name, spec in specs.items():
        with np.errstate(over="ignore"):
            fig.columns[name] = s * channel_transfer(spec, ch, COMPARE_N, alpha, tau)
    return fig


def compare_figure(ch: Channel) -> FigureData:
    specs = {"exact": SolverSpec(Method.EXACT)}
    for o in (2, 4):
        specs[f"tcl{o}"] = SolverSpec(Method.TCL, o)
        specs[f"nz{o}"] = SolverSpec(Method.NZ, o)
    ylim = (-0.6, 1.2) if ch is Channel.V3 else (-0.6, 0.8)
    return _compare(f"compare-{ch.value}", ch, specs, 3.0, 301, ylim)


def order10_figure(ch: Channel) -> FigureData:
    specs = {"exact": SolverSpec(Method.EXACT), "tcl10": SolverSpec(Method.TCL, 10),
             "nz10": SolverSpec(Method.NZ, 10)}
    ylim = (-0.6, 1.2) if ch is Channel.V3 else (-0.6, 0.8)
    return _compare(f"order10-{ch.value}", ch, specs, 2.0, 401, ylim)


def error_figure(lo: float = 1e-3, hi: float = 1e-1, points: int = 201) -> FigureData:
    """|v+-_exact - v+-_approx| for TCL2 and NZ2 at small alpha t (alpha = 1, N = 100)."""
    at = np.logspace(math.log10(lo), math.log10(hi), points)
    exact = V_PM0 * f12(COMPARE_N, 1.0, at)
    fig = FigureData("error", f"error of TCL2 and NZ2, N={COMPARE_N}", "alpha_t", at,
                     y_label="|v+- - approx|", logx=True, logy=True)
    for name, spec in (("eps_tcl2", SolverSpec(Method.TCL, 2)), ("eps_nz2", SolverSpec(Method.NZ, 2))):
        fig.columns[name] = np.abs(exact - V_PM0 * channel_transfer(spec, Channel.VPM, COMPARE_N, 1.0, at))
    return fig


def build_figure(fig_id: str) -> FigureData:
    if fig_id not in FIGURE_IDS:
        raise DomainError(f"unknown figure {fig_id!r}; choose from {', '.join(FIGURE_IDS)}")
    if fig_id.startswith("ninf"):
        return ninf(_channel(fig_id))
    if fig_id == "entropy":
        return entropy_figure()
    if fig_id.startswith("compare"):
        return compare_figure(_channel(fig_id))
    if fig_id == "error":
        return error_figure()
    return order10_figure(_channel(fig_id))


def figures(which=None, outdir=".") -> dict[str, tuple[Path, Path]]:
    """Compute the requested figures concurrently and write ``<id>.csv`` and ``<id>.svg``."""
    which = list(FIGURE_IDS if not which else which)
    for w in which:
        if w not in FIGURE_IDS:
            raise DomainError(f"unknown figure {w!r}; choose from {', '.join(FIGURE_IDS)}")
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    with ThreadPoolExecutor(max_workers=thread_cap()) as pool:
        built = list(pool.map(build_figure, which))
    written = {}
    for fig in built:
        csv_path = outdir / f"{fig.fig_id}.csv"
        svg_path = outdir / f"{fig.fig_id}.svg"
        write_text(table_csv(fig.table()), csv_path)
        write_text(fig.svg(), svg_path)
        written[fig.fig_id] = (csv_path, svg_path)
    return written
