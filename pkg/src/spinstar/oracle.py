"""Brute-force checks in the full 2^(N+1)-dimensional Hilbert space.

Nothing here uses the angular-momentum spectrum: the Hamiltonian is built
from Kronecker products, propagated by dense diagonalization, and bath
traces are taken in the computational basis. Small N only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .bloch import SIGMA_3, SIGMA_MINUS, SIGMA_PLUS, BlochVector, ReducedDensity, bloch_to_density, density_to_bloch
from .errors import DomainError

MAX_DENSE_N = 12
MAX_TRACE_N = 8
MAX_WORD = 6

# bath convention: sigma_3^(i)|s_i> = (-1)^s_i |s_i>, so s = 0 is spin up
_UP_FROM_DOWN = np.array([[0, 1], [0, 0]], dtype=np.int64)


def _kron_all(ops):
    out = np.ones((1, 1), dtype=ops[0].dtype)
    for op in ops:
        out = np.kron(out, op)
    return out


@lru_cache(maxsize=32)
def bath_ladder(n: int) -> tuple[np.ndarray, np.ndarray]:
    """(J+, J-) on the bath as 0/1 integer matrices of size 2^N."""
    if not 1 <= n <= MAX_DENSE_N:
        raise DomainError(f"dense bath needs 1 <= N <= {MAX_DENSE_N}, got {n}")
    eye = np.eye(2, dtype=np.int64)
    jp = np.zeros((2**n, 2**n), dtype=np.int64)
    for i in range(n):
        ops = [eye] * n
        ops[i] = _UP_FROM_DOWN
        jp += _kron_all(ops)
    jp.setflags(write=False)
    jm = jp.T.copy()
    jm.setflags(write=False)
    return jp, jm


def build_hamiltonian(n: int, alpha: float = 1.0) -> np.ndarray:
    """alpha*H = 2 alpha (sigma_+ J_- + sigma_- J_+); central spin is the first factor."""
    jp, jm = bath_ladder(n)
    sp = SIGMA_PLUS.real
    sm = SIGMA_MINUS.real
    return 2 * alpha * (np.kron(sp, jm) + np.kron(sm, jp)).astype(float)


def rotation_generator(n: int) -> np.ndarray:
    """sigma_3/2 + J_3, the generator of rotations about the z axis."""
    jp, jm = bath_ladder(n)
    j3 = 0.5 * (jp @ jm - jm @ jp)
    return np.kron(SIGMA_3.real / 2, np.eye(2**n)) + np.kron(np.eye(2), j3)


def partial_trace_bath(rho: np.ndarray, n: int) -> np.ndarray:
    r = rho.reshape(2, 2**n, 2, 2**n)
    return np.einsum("ajbj->ab", r)


@dataclass
class DenseSystem:
    """Eigendecomposition of H for one bath size, reused across times and states."""

    n: int
    energies: np.ndarray = field(init=False, repr=False)
    vectors: np.ndarray = field(init=False, repr=False)
    _units: list = field(init=False, repr=False)

    def __post_init__(self):
        h = build_hamiltonian(self.n, 1.0)
        self.energies, self.vectors = np.linalg.eigh(h)
        dim_b = 2**self.n
        v = self.vectors
        # |a><b| (x) I_B in the eigenbasis, for a, b in {0, 1}
        self._units = {}
        for a in range(2):
            for b in range(2):
                e = np.zeros((2, 2))
                e[a, b] = 1.0
                self._units[a, b] = v.T @ np.kron(e, np.eye(dim_b)) @ v

    def reduced_state(self, rho_s: np.ndarray, alpha: float, t: float) -> np.ndarray:
        """tr_B[U (rho_S (x) 2^-N I_B) U^dagger] at time t."""
        rho_s = np.asarray(rho_s, dtype=complex)
        dim_b = 2**self.n
        # rho_S (x) I_B / 2^N written in the eigenbasis, linear in rho_S
        rho0 = sum(rho_s[a, b] * unit for (a, b), unit in self._units.items()) / dim_b
        phase = np.exp(-1j * alpha * t * self.energies)
        rho_t = phase[:, None] * rho0 * phase.conj()[None, :]
        out = np.empty((2, 2), dtype=complex)
        for a in range(2):
            for b in range(2):
                # <a|rho_S|b> = tr[(|b><a| (x) I_B) rho]
                out[a, b] = np.sum(self._units[b, a].T * rho_t)
        return out


@lru_cache(maxsize=16)
def dense_system(n: int) -> DenseSystem:
    return DenseSystem(n)


def propagate_dense(v0: BlochVector, n: int, alpha: float, t: float) -> BlochVector:
    if n == 0:
        return v0
    rho_s = bloch_to_density(v0).matrix
    out = dense_system(n).reduced_state(rho_s, alpha, t)
    out = (out + out.conj().T) / 2
    return density_to_bloch(ReducedDensity.from_matrix(out))


# --- exact computational-basis traces --------------------------------------------

WORD_SYMBOLS = {"pm": "J+J-", "mp": "J-J+"}


def trace_word(word, n: int) -> Fraction:
    """2^-N tr of a product of J+J- ('pm') and J-J+ ('mp') factors, exact."""
    word = list(word)
    if len(word) > MAX_WORD:
        raise DomainError(f"word length {len(word)} exceeds {MAX_WORD}")
    if not 1 <= n <= MAX_TRACE_N:
        raise DomainError(f"exact traces need 1 <= N <= {MAX_TRACE_N}, got {n}")
    bad = [w for w in word if w not in WORD_SYMBOLS]
    if bad:
        raise DomainError(f"unknown word symbols {bad}; use 'pm' or 'mp'")
    jp, jm = bath_ladder(n)
    factors = {"pm": jp @ jm, "mp": jm @ jp}
    # entries stay far below 2^63 for N <= 8 and six factors
    prod = np.eye(2**n, dtype=np.int64)
    for w in word:
        prod = prod @ factors[w]
    return Fraction(int(np.trace(prod)), 2**n)


# --- Liouvillian moments by nested commutators --------------------------------------

@dataclass(frozen=True)
class MomentCheck:
    n: int
    k: int
    v3_scalar: float
    vpm_scalar: float
    odd_residual: float
    off_channel_residual: float


def _liouvillian_powers(h: np.ndarray, rho: np.ndarray, n_max: int) -> list[np.ndarray]:
    out = [rho]
    for _ in range(n_max):
        out.append(-1j * (h @ out[-1] - out[-1] @ h))
    return out


def verify_liouvillian_moments(n: int, k_max: int) -> list[MomentCheck]:
    """Channel scalars of tr_B{L^2k rho_S (x) 2^-N I_B} from dense commutators.

    Two probe states separate the channels: one with only v3, one with only v+-.
    Residuals measure odd powers and any leakage outside the predicted form.
    """
    if not 1 <= n <= 6 or not 1 <= k_max <= 4:
        raise DomainError("need 1 <= N <= 6 and 1 <= k_max <= 4")
    h = build_hamiltonian(n, 1.0)
    dim_b = 2**n
    probes = {"v3": np.array([[0.5, 0], [0, -0.5]], dtype=complex),     # v3 = 1 part, I/2 removed
              "vpm": np.array([[0, 0.5], [0.5, 0]], dtype=complex)}     # v1 = 1, so v+ = v- = 1/2
    reduced = {}
    for name, op in probes.items():
        powers = _liouvillian_powers(h.astype(complex), np.kron(op, np.eye(dim_b) / dim_b), 2 * k_max)
        reduced[name] = [partial_trace_bath(p, n) for p in powers]
    checks = []
    for k in range(1, k_max + 1):
        x3 = reduced["v3"][2 * k]
        xpm = reduced["vpm"][2 * k]
        # v3 probe -> mu * (v3/2) sigma_3 with v3 = 1; vpm probe -> mu * (v- sigma_+ + v+ sigma_-)
        s3 = x3[0, 0].real * 2
        spm = xpm[0, 1].real * 2
        pred3 = s3 / 2 * SIGMA_3
        predpm = spm / 2 * (SIGMA_PLUS + SIGMA_MINUS)
        off = max(np.max(np.abs(x3 - pred3)), np.max(np.abs(xpm - predpm)))
        odd = max(np.max(np.abs(reduced[name][2 * k - 1])) for name in probes)
        checks.append(MomentCheck(n, k, s3, spm, float(odd), float(off)))
    return checks


# --- invariant two-dimensional subspaces ----------------------------------------------

def coupled_basis(n: int) -> list[tuple[int, int, int, np.ndarray]]:
    """Orthonormal |j, m, nu> states of the bath as (two_j, two_m, nu, vector).

    Highest-weight states are found as the null space of J+ inside each J3
    eigenspace, then lowered with J-; this fixes nu consistently along a multiplet.
    """
    jp, jm = bath_ladder(n)
    jp = jp.astype(float)
    jm = jm.astype(float)
    dim = 2**n
    # two_m of computational state: (#up - #down)
    two_m_of = np.array([n - 2 * bin(s).count("1") for s in range(dim)])
    states = []
    for two_j in range(n % 2, n + 1, 2):
        idx = np.flatnonzero(two_m_of == two_j)
        sub = np.zeros((dim, len(idx)))
        sub[idx, np.arange(len(idx))] = 1.0
        # null space of J+ restricted to the two_m = two_j sector
        _, sv, vh = np.linalg.svd(jp @ sub)
        rank = int(np.sum(sv > 1e-10))
        highest = sub @ vh[rank:].T
        for nu in range(highest.shape[1]):
            vec = highest[:, nu]
            for two_m in range(two_j, -two_j - 1, -2):
                states.append((two_j, two_m, nu, vec / np.linalg.norm(vec)))
                vec = jm @ vec
    return states


def invariant_subspace_residual(n: int) -> float:
    """Largest norm of H|psi> outside span{|+,j,m,nu>, |-,j,m+1,nu>}."""
    h = build_hamiltonian(n, 1.0)
    basis = coupled_basis(n)
    lookup = {(tj, tm, nu): vec for tj, tm, nu, vec in basis}
    up = np.array([1.0, 0.0])
    down = np.array([0.0, 1.0])
    worst = 0.0
    for tj, tm, nu, vec in basis:
        partner = lookup.get((tj, tm + 2, nu))
        block = [np.kron(up, vec)]
        if partner is not None:
            block.append(np.kron(down, partner))
        q = np.array(block).T
        for psi in block:
            out = h @ psi
            worst = max(worst, float(np.linalg.norm(out - q @ (q.T @ out))))
    return worst
