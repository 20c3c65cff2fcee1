import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spinstar.bloch import BlochVector
from spinstar.cumulants import Channel
from spinstar.errors import DomainError, IntegrationError
from spinstar.model import INFINITE, Method, ModelParams
from spinstar.solvers import (
    SolverSpec,
    born_markov_diagnostic,
    channel_transfer,
    companion_matrix,
    exact_series_check,
    nz_companion,
    nz_laplace,
    nz_solve,
    nz_transfer,
    nz_volterra,
    solve,
    taylor_of_solution,
    tcl_solve,
)

# kernel (-3, -2): V(s) = s^3 / ((s^2+1)(s^2+2)) -> v = 2 cos(sqrt2 t) - cos t
HAND_KERNEL = [-3.0, -2.0]


def hand_solution(t):
    return 2 * np.cos(math.sqrt(2) * t) - np.cos(t)


def test_spec_validation():
    with pytest.raises(DomainError):
        SolverSpec(Method.TCL, 3)
    with pytest.raises(DomainError):
        SolverSpec(Method.REDFIELD, 4)
    with pytest.raises(DomainError):
        SolverSpec(Method.TCL, 4, "paper")
    assert SolverSpec(Method.BORN).resolved() == SolverSpec(Method.NZ, 2)
    assert SolverSpec(Method.REDFIELD).label == "tcl2"


def test_companion_structure():
    a = companion_matrix([5.0, 7.0])
    assert a[0, 1] == 5.0 and a[0, 3] == 7.0
    assert a[1, 0] == a[2, 1] == a[3, 2] == 1.0


@pytest.mark.parametrize("backend", ["companion", "laplace"])
def test_hand_solved_kernel(backend):
    t = np.linspace(0, 6, 61)
    assert np.allclose(nz_transfer(HAND_KERNEL, t, backend=backend), hand_solution(t), atol=1e-10)


def test_volterra_matches_hand_solution():
    grid, v = nz_volterra(HAND_KERNEL, 6.0, 60)
    assert np.allclose(v, hand_solution(grid), atol=1e-9)


def test_unsorted_times():
    t = np.array([2.0, 0.5, 1.0])
    assert np.allclose(nz_companion(HAND_KERNEL, t), hand_solution(t), atol=1e-10)


def test_laplace_limits():
    with pytest.raises(DomainError):
        nz_laplace([-1.0, -1.0, -1.0], np.array([0.5]))


def test_tight_tolerance_reports_failure():
    with pytest.raises(IntegrationError) as info:
        nz_companion([-400.0, 1e5, -1e7], np.linspace(0, 2, 5), tolerance=1e-16)
    assert info.value.achieved_error is None or info.value.achieved_error > 0


@given(st.integers(1, 300), st.floats(0, 2))
def test_second_order_closed_forms(n, x):
    # TCL2: exp(-2N x^2), exp(-4N x^2); NZ2: cos(2 sqrt(N) x), cos(2 sqrt(2N) x)
    t = np.array([x])
    assert channel_transfer(SolverSpec(Method.TCL, 2), "vpm", n, 1.0, t)[0] == pytest.approx(math.exp(-2 * n * x * x), abs=1e-14)
    assert channel_transfer(SolverSpec(Method.TCL, 2), "v3", n, 1.0, t)[0] == pytest.approx(math.exp(-4 * n * x * x), abs=1e-14)
    assert channel_transfer(SolverSpec(Method.NZ, 2), "vpm", n, 1.0, t)[0] == pytest.approx(math.cos(2 * math.sqrt(n) * x), abs=1e-12)
    assert channel_transfer(SolverSpec(Method.NZ, 2), "v3", n, 1.0, t)[0] == pytest.approx(math.cos(2 * math.sqrt(2 * n) * x), abs=1e-12)


def test_exact_taylor_series_single_spin():
    # [DERIVED] sympy series of (1 + cos 4x)/2
    series = taylor_of_solution(SolverSpec(Method.EXACT), Channel.V3, 1, 8)
    assert series == [1, 0, -4, 0, Fraction(16, 3), 0, Fraction(-128, 45), 0, Fraction(256, 315)]


def test_exp_of_cumulants_rebuilds_exact():
    for n in (1, 3, 10):
        for ch in Channel:
            assert exact_series_check(ch, n, 12) == taylor_of_solution(SolverSpec(Method.EXACT), ch, n, 12)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("n", [1, 2, 5, 100])
def test_truncations_match_exact_series(k, n):
    for ch in Channel:
        exact = taylor_of_solution(SolverSpec(Method.EXACT), ch, n, 12)
        for method in (Method.TCL, Method.NZ):
            approx = taylor_of_solution(SolverSpec(method, 2 * k), ch, n, 12)
            assert approx[: 2 * k + 1] == exact[: 2 * k + 1]


def test_published_convention_series_mismatch_at_six():
    # the published order-6 NZ relation shifts the sixth Taylor coefficient by 2 mu2^3 / 6!
    exact = taylor_of_solution(SolverSpec(Method.EXACT), Channel.V3, 7, 6)
    pub = taylor_of_solution(SolverSpec(Method.NZ, 6, "paper"), Channel.V3, 7, 6)
    assert pub[4] == exact[4]
    assert pub[6] - exact[6] == Fraction(2 * (-8 * 7) ** 3, 720)


def test_limit_series():
    # 1 + 2g, g = -sqrt2 x D(sqrt2 x) = -2x^2 + (8/3)x^4 - ...
    s = taylor_of_solution(SolverSpec(Method.LIMIT), Channel.V3, None, 4)
    assert s == [1, 0, -4, 0, Fraction(16, 3)]


def test_solve_trajectory_and_labels():
    p = ModelParams(50, 0.3, BlochVector(0.5, 0.2, 0.7))
    t = np.linspace(0, 1, 11)
    traj = solve(SolverSpec(Method.NZ, 4), p, t)
    assert traj.method == "nz" and traj.order == 4 and traj.convention == "moment-matched"
    assert traj.v1[0] == 0.5 and traj.v3[0] == 0.7
    red = tcl_solve(SolverSpec(Method.REDFIELD), p, t)
    assert red.method == "redfield" and np.allclose(red.v3, tcl_solve(SolverSpec(Method.TCL, 2), p, t).v3)
    with pytest.raises(DomainError):
        nz_solve(SolverSpec(Method.TCL, 2), p, t)
    with pytest.raises(DomainError):
        solve(SolverSpec(Method.TCL, 2), ModelParams(INFINITE), t)


def test_volterra_backend_through_solve():
    p = ModelParams(20, 0.5, BlochVector(1, 0, 1))
    t = np.linspace(0, 1, 21)
    a = solve(SolverSpec(Method.NZ, 6), p, t)
    b = solve(SolverSpec(Method.NZ, 6), p, t, backend="volterra")
    assert np.allclose(a.v3, b.v3, atol=1e-8)
    with pytest.raises(DomainError):
        solve(SolverSpec(Method.NZ, 6), p, np.array([0.0, 0.3, 1.0]), backend="volterra")


def test_born_markov_rate_grows_linearly():
    rep = born_markov_diagnostic(ModelParams(100, 1.0), np.linspace(0, 50, 51))
    assert rep.unbounded
    assert rep.rate_over_t == pytest.approx(400.0)
    assert np.allclose(rep.rates, 400.0 * rep.times)


def test_tcl2_beats_nz2_in_coherence_channel():
    # v+- fourth-order errors: |2N^2 - a4| vs |2N^2/3 - a4| with a4 = 8N^2/3 - 2N
    for n in (5, 100):
        exact = taylor_of_solution(SolverSpec(Method.EXACT), Channel.VPM, n, 4)[4]
        tcl = taylor_of_solution(SolverSpec(Method.TCL, 2), Channel.VPM, n, 4)[4]
        nz = taylor_of_solution(SolverSpec(Method.NZ, 2), Channel.VPM, n, 4)[4]
        assert exact == Fraction(8 * n * n, 3) - 2 * n
        assert abs(tcl - exact) < abs(nz - exact)
