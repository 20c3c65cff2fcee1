"""Trajectory serialization: CSV, JSON and a quick SVG view."""
from __future__ import annotations

import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from .model import INFINITE, ModelParams, Trajectory
from .bloch import BlochVector

COLUMNS = ("t", "v1", "v2", "v3", "r", "entropy")
FORMATS = ("csv", "json", "svg")


def fmt(x: float) -> str:
    # 17 significant digits round-trip every binary64 exactly
    return format(float(x), ".17g")


def _n_repr(n):
    return "inf" if n == INFINITE else int(n)


def metadata(traj: Trajectory) -> dict:
    p = traj.params
    return {
        "method": traj.method,
        "order": traj.order,
        "convention": traj.convention,
        "N": _n_repr(p.n),
        "alpha": p.alpha,
        "v0": [p.v0.v1, p.v0.v2, p.v0.v3],
    }


def trajectory_csv(traj: Trajectory) -> str:
    buf = io.StringIO()
    buf.write(",".join(COLUMNS) + "\n")
    cols = [getattr(traj, "times")] + [getattr(traj, c) for c in COLUMNS[1:]]
    for row in zip(*cols):
        buf.write(",".join(fmt(x) for x in row) + "\n")
    return buf.getvalue()


def _json_float(x: float):
    return None if math.isnan(x) else float(x)


def trajectory_json(traj: Trajectory) -> str:
    cols = {"t": traj.times}
    cols.update({c: getattr(traj, c) for c in COLUMNS[1:]})
    data = {
        "metadata": metadata(traj),
        "columns": {k: [_json_float(x) for x in v] for k, v in cols.items()},
    }
    return json.dumps(data, indent=1, allow_nan=False) + "\n"


def trajectory_svg(traj: Trajectory) -> str:
    from .svg import Curve, line_plot

    curves = [Curve(c, getattr(traj, c)) for c in ("v1", "v2", "v3", "r")]
    title = f"{traj.method} N={_n_repr(traj.params.n)} alpha={traj.params.alpha:g}"
    return line_plot(traj.times, curves, title=title, x_label="t", y_label="Bloch components")


def render_trajectory(traj: Trajectory, fmt_name: str) -> str:
    if fmt_name == "csv":
        return trajectory_csv(traj)
    if fmt_name == "json":
        return trajectory_json(traj)
    if fmt_name == "svg":
        return trajectory_svg(traj)
    raise ValueError(f"unknown format {fmt_name!r}; choose from {FORMATS}")


def write_text(text: str, path) -> None:
    """Write to ``path`` with LF line endings; '-' or None means stdout."""
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def emit_trajectory(traj: Trajectory, format: str = "csv", path=None) -> None:
    write_text(render_trajectory(traj, format), path)


def read_trajectory_csv(source) -> dict[str, np.ndarray]:
    """Parse CSV into float columns. A ``Path`` is read from disk; a ``str`` is the CSV text."""
    text = source.read_text(encoding="utf-8") if isinstance(source, Path) else source
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    return {name: np.array([float(r[i]) for r in body]) for i, name in enumerate(header)}


def read_trajectory_json(text: str) -> tuple[dict, dict[str, np.ndarray]]:
    data = json.loads(text)
    cols = {k: np.array([np.nan if x is None else x for x in v], dtype=float)
            for k, v in data["columns"].items()}
    return data["metadata"], cols


def params_from_metadata(meta: dict) -> ModelParams:
    n = INFINITE if meta["N"] == "inf" else int(meta["N"])
    return ModelParams(n, float(meta["alpha"]), BlochVector.from_sequence(meta["v0"]))


def table_csv(columns: dict[str, np.ndarray]) -> str:
    names = list(columns)
    buf = io.StringIO()
    buf.write(",".join(names) + "\n")
    for row in zip(*(columns[n] for n in names)):
        buf.write(",".join(fmt(x) for x in row) + "\n")
    return buf.getvalue()
