import json
import math

import numpy as np
import pytest

from spinstar.bloch import BlochVector
from spinstar.exact import propagate_exact, propagate_limit
from spinstar.model import INFINITE, ModelParams
from spinstar.reports import (
    COLUMNS,
    fmt,
    params_from_metadata,
    read_trajectory_csv,
    read_trajectory_json,
    render_trajectory,
    table_csv,
    write_text,
)


@pytest.fixture
def traj():
    return propagate_exact(ModelParams(6, 0.5, BlochVector(0.6, 0.0, 0.8)), np.linspace(0, 2, 9))


def test_fmt_round_trips():
    for x in (0.1, 1 / 3, math.pi * 1e-300, -2.5e17):
        assert float(fmt(x)) == x


def test_csv_schema_and_round_trip(traj):
    text = render_trajectory(traj, "csv")
    assert text.splitlines()[0] == ",".join(COLUMNS)
    cols = read_trajectory_csv(text)
    assert np.array_equal(cols["v3"], traj.v3)
    assert np.array_equal(cols["t"], traj.times)


def test_json_round_trip(traj):
    meta, cols = read_trajectory_json(render_trajectory(traj, "json"))
    assert params_from_metadata(meta) == traj.params
    assert meta["method"] == "exact"
    assert np.array_equal(cols["entropy"], traj.entropy)


def test_json_nan_and_infinite_n():
    # r > 1 leaves entropy undefined; written as null
    t = propagate_limit(ModelParams(INFINITE, 1.0, BlochVector(1, 0, 1)), np.array([0.0, 0.1]))
    meta, cols = read_trajectory_json(render_trajectory(t, "json"))
    assert meta["N"] == "inf"
    assert math.isnan(cols["entropy"][0])
    assert "NaN" not in render_trajectory(t, "json")


def test_svg_is_deterministic(traj):
    a, b = render_trajectory(traj, "svg"), render_trajectory(traj, "svg")
    assert a == b and a.startswith("<svg") and a.rstrip().endswith("</svg>")


def test_unknown_format(traj):
    with pytest.raises(ValueError):
        render_trajectory(traj, "xml")


def test_write_text_lf_and_errors(tmp_path):
    path = tmp_path / "x.csv"
    write_text(table_csv({"a": np.array([1.0, 2.0])}), path)
    assert path.read_bytes() == b"a\n1\n2\n"
    with pytest.raises(OSError, match="missing"):
        write_text("x", tmp_path / "missing" / "x.csv")
