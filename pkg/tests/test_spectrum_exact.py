import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from spinstar.bloch import BlochVector
from spinstar.errors import DomainError
from spinstar.exact import f3, f12, limit_fs, limit_g, propagate_exact, propagate_limit
from spinstar.model import INFINITE, ModelParams
from spinstar.oracle import propagate_dense
from spinstar.spectrum import bath_spectrum, h, h_squared, multiplicity, spectral_grid


@given(st.integers(0, 60))
def test_multiplicities_count_the_hilbert_space(n):
    spec = bath_spectrum(n)
    assert spec.dimension == 2**n
    assert sum(m * (tj + 1) for tj, m in spec.entries) == 2**n


def test_small_multiplicities():
    assert multiplicity(2, 2) == 1 and multiplicity(0, 2) == 1
    assert multiplicity(1, 3) == 2 and multiplicity(3, 3) == 1
    with pytest.raises(DomainError):
        multiplicity(4, 2)


def test_ladder_factor():
    # h(j=1, m=0) = sqrt(2)
    assert h(2, 0) == pytest.approx(math.sqrt(2))
    assert h_squared(2, 0) == 2
    assert h_squared(2, -2) == 0


def test_grid_weights_sum_to_one():
    g = spectral_grid(40)
    assert g.weight.sum() == pytest.approx(1.0, abs=1e-14)
    with pytest.raises(ValueError):
        g.weight[0] = 2.0


def test_single_spin_closed_form():
    t = np.linspace(0, 3, 31)
    assert np.allclose(f3(1, 1.0, t), (1 + np.cos(4 * t)) / 2, atol=1e-15)
    assert np.allclose(f12(1, 1.0, t), np.cos(2 * t), atol=1e-15)


def test_empty_bath_is_constant():
    t = np.linspace(0, 3, 5)
    assert np.all(f3(0, 1.0, t) == 1) and np.all(f12(0, 1.0, t) == 1)


def test_frozen_dense_values():
    # [DERIVED] 2^N x 2 kron-built Hamiltonian, eigh propagation, partial trace
    assert f12(3, 1.0, 0.7) == pytest.approx(0.07409301043043105, abs=1e-12)
    assert f3(3, 1.0, 0.7) == pytest.approx(0.27062060096282803, abs=1e-12)
    assert f12(5, 1.0, 0.7) == pytest.approx(0.043390475128580755, abs=1e-12)
    assert f3(5, 1.0, 0.7) == pytest.approx(0.3386128285337424, abs=1e-12)


@given(st.integers(1, 6), st.floats(0, 4), st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1))
def test_dense_oracle_property(n, t, a, b, c):
    v = BlochVector(a, b, c)
    got = propagate_dense(v, n, 1.0, t).as_array()
    want = [f12(n, 1.0, t) * a, f12(n, 1.0, t) * b, f3(n, 1.0, t) * c]
    assert np.allclose(got, want, atol=1e-10)


@given(st.integers(1, 200), st.floats(0, 10))
def test_exact_dynamics_is_contractive(n, t):
    assert abs(f12(n, 1.0, t)) <= 1 + 1e-12
    assert abs(f3(n, 1.0, t)) <= 1 + 1e-12


def test_negative_time_rejected():
    with pytest.raises(DomainError):
        f12(7, 1.0, -0.5)


def test_infinite_n_rejected():
    with pytest.raises(DomainError):
        f3(INFINITE, 1.0, 0.5)


def test_limit_g_values():
    assert limit_g(1.0, 0.0) == 0.0
    # [DERIVED] -sqrt(2) D(sqrt(2)) at 40 digits (mpmath quadrature)
    assert limit_g(1.0, 1.0) == pytest.approx(-0.63998807456540892568, abs=1e-14)
    # g + 1/2 ~ -(1/(8x^2) + 3/(32x^4) + 15/(128x^6)): 8.2e-3 at x = alpha t = 4
    x = 4.0
    assert limit_g(1.0, x) + 0.5 == pytest.approx(-(1 / (8 * x**2) + 3 / (32 * x**4) + 15 / (128 * x**6)), rel=1e-3)
    assert abs(limit_g(1.0, 11.25) + 0.5) <= 1e-3


def test_limit_relation():
    t = np.linspace(0, 3, 13)
    g = limit_g(1.0, t)
    a, b = limit_fs(1.0, t)
    assert np.allclose(a, 1 + g) and np.allclose(b, 1 + 2 * g)


def test_stationary_state_halves_coherences():
    # (1,0,1) -> (1/2, 0, 0) as t -> infinity
    traj = propagate_limit(ModelParams(INFINITE, 1.0, BlochVector(1, 0, 1)), np.array([0.0, 1e4]))
    assert traj.v1[-1] == pytest.approx(0.5, abs=1e-6)
    assert traj.v3[-1] == pytest.approx(0.0, abs=1e-6)


def test_trajectory_initial_row_and_trivial_cases():
    p = ModelParams(4, 0.8, BlochVector(0.3, -0.2, 0.6))
    traj = propagate_exact(p, np.linspace(0, 1, 5))
    assert (traj.v1[0], traj.v2[0], traj.v3[0]) == (0.3, -0.2, 0.6)
    zero = propagate_exact(ModelParams(4, 1.0, BlochVector(0, 0, 0)), np.linspace(0, 1, 5))
    assert np.all(zero.v1 == 0) and np.all(zero.v3 == 0)
    assert np.allclose(zero.entropy, math.log(2))
