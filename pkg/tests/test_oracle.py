from fractions import Fraction

import numpy as np
import pytest

from spinstar.cumulants import Channel, moment
from spinstar.errors import DomainError
from spinstar.oracle import (
    bath_ladder,
    build_hamiltonian,
    coupled_basis,
    invariant_subspace_residual,
    partial_trace_bath,
    trace_word,
    verify_liouvillian_moments,
)


def test_ladder_commutator():
    # [J+, J-] = 2 J3, and J3 has trace zero
    jp, jm = bath_ladder(3)
    j3 = (jp @ jm - jm @ jp) / 2
    assert np.trace(j3) == 0
    assert np.allclose(np.diag(np.diag(j3)), j3)


def test_hamiltonian_hermitian():
    h = build_hamiltonian(3, 0.7)
    assert h.shape == (16, 16)
    assert np.allclose(h, h.conj().T)


def test_partial_trace():
    rho = np.kron(np.array([[0.25, 0.1], [0.1, 0.75]]), np.eye(4) / 4)
    assert np.allclose(partial_trace_bath(rho, 2), [[0.25, 0.1], [0.1, 0.75]])


def test_trace_word_known_value():
    # R_1^1 at N = 2
    assert trace_word(["pm", "mp"], 2) == 1
    assert trace_word(["pm"], 4) == Fraction(2)


def test_trace_word_bounds():
    with pytest.raises(DomainError):
        trace_word(["pm"] * 7, 2)
    with pytest.raises(DomainError):
        trace_word(["pm"], 9)


def test_liouvillian_scalars():
    checks = verify_liouvillian_moments(3, 3)
    # [DERIVED] k=2, N=3, v+- channel: 16 (Q2 + 6 R_1^1 + Q2)(3) = 432
    assert checks[1].vpm_scalar == pytest.approx(432.0)
    for c in checks:
        assert c.v3_scalar == pytest.approx(float(moment(Channel.V3, c.k)(3)))
        assert c.odd_residual < 1e-9 and c.off_channel_residual < 1e-9


def test_coupled_basis_orthonormal():
    vecs = np.array([v for *_, v in coupled_basis(4)])
    assert vecs.shape == (16, 16)
    assert np.allclose(vecs @ vecs.T, np.eye(16), atol=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_invariant_subspaces(n):
    assert invariant_subspace_residual(n) < 1e-12
