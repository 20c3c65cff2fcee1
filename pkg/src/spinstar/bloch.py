"""Qubit state representations for the central spin.

Bloch vectors, 2x2 reduced density matrices, the von Neumann entropy,
the Lindblad-type superoperators S3, S+ and S-, and the diagonal
transfer map that carries v(0) to v(t).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError

PHYSICAL_TOL = 1e-12

SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class BlochVector:
    v1: float
    v2: float
    v3: float

    @classmethod
    def from_sequence(cls, values) -> BlochVector:
        v1, v2, v3 = (float(x) for x in values)
        return cls(v1, v2, v3)

    @property
    def v_plus(self) -> complex:
        return complex(self.v1, self.v2) / 2

    @property
    def v_minus(self) -> complex:
        return complex(self.v1, -self.v2) / 2

    @property
    def r(self) -> float:
        return math.sqrt(self.v1**2 + self.v2**2 + self.v3**2)

    @property
    def is_physical(self) -> bool:
        return self.r <= 1 + PHYSICAL_TOL

    def as_array(self) -> np.ndarray:
        return np.array([self.v1, self.v2, self.v3])


@dataclass(frozen=True)
class ReducedDensity:
    """2x2 density matrix of the central spin, basis (|+>, |->) with sigma_3|+> = |+>."""

    rho00: complex
    rho01: complex
    rho10: complex
    rho11: complex

    @classmethod
    def from_matrix(cls, m) -> ReducedDensity:
        m = np.asarray(m, dtype=complex)
        if m.shape != (2, 2):
            raise ValidationError(f"expected a 2x2 matrix, got shape {m.shape}")
        return cls(complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1]))

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.rho00, self.rho01], [self.rho10, self.rho11]], dtype=complex)

    @property
    def trace(self) -> complex:
        return self.rho00 + self.rho11

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def bloch_to_density(v: BlochVector) -> ReducedDensity:
    """rho = (I + v.sigma)/2. Unphysical vectors are accepted on purpose."""
    return ReducedDensity(
        complex(1 + v.v3) / 2,
        complex(v.v1, -v.v2) / 2,
        complex(v.v1, v.v2) / 2,
        complex(1 - v.v3) / 2,
    )


def density_to_bloch(rho: ReducedDensity, tol: float = 1e-10) -> BlochVector:
    m = rho.matrix
    if np.max(np.abs(m - m.conj().T)) > tol:
        raise ValidationError("density matrix is not Hermitian")
    if abs(rho.trace - 1) > tol:
        raise ValidationError(f"density matrix trace is {rho.trace!r}, expected 1")
    v1 = (rho.rho01 + rho.rho10).real
    v2 = (1j * (rho.rho01 - rho.rho10)).real
    v3 = (rho.rho00 - rho.rho11).real
    return BlochVector(v1, v2, v3)


def _xlogx(p: np.ndarray) -> np.ndarray:
    out = np.zeros_like(p)
    pos = p > 0
    out[pos] = p[pos] * np.log(p[pos])
    return out


def entropy(r):
    """Von Neumann entropy (nats) of a qubit state with Bloch radius ``r``.

    Evaluated as -sum(lam*ln(lam)) over the eigenvalues lam = (1 +- r)/2.
    Accepts scalars or arrays; radii outside [0, 1] beyond 1e-12 raise.
    """
    arr = np.asarray(r, dtype=float)
    if np.any(arr < -PHYSICAL_TOL) or np.any(arr > 1 + PHYSICAL_TOL) or np.any(np.isnan(arr)):
        raise DomainError("Bloch radius must lie in [0, 1]")
    arr = np.clip(arr, 0.0, 1.0)
    s = -_xlogx((1 - arr) / 2) - _xlogx((1 + arr) / 2) + 0.0  # no -0 in output
    return float(s) if s.ndim == 0 else s


# --- superoperators acting on 2x2 operators ---------------------------------

def s_plus(a: np.ndarray) -> np.ndarray:
    anti = SIGMA_MINUS @ SIGMA_PLUS
    return SIGMA_PLUS @ a @ SIGMA_MINUS - 0.5 * (anti @ a + a @ anti)


def s_minus(a: np.ndarray) -> np.ndarray:
    anti = SIGMA_PLUS @ SIGMA_MINUS
    return SIGMA_MINUS @ a @ SIGMA_PLUS - 0.5 * (anti @ a + a @ anti)


def s_3(a: np.ndarray) -> np.ndarray:
    return SIGMA_3 @ a @ SIGMA_3 - a


def apply_superoperators(coeffs: tuple[float, float, float], rho) -> np.ndarray:
    """Apply c3*S3 + c+*S+ + c-*S- to a 2x2 operator."""
    c3, cp, cm = coeffs
    a = np.asarray(rho.matrix if isinstance(rho, ReducedDensity) else rho, dtype=complex)
    return c3 * s_3(a) + cp * s_plus(a) + cm * s_minus(a)


def lindblad_translation(w3: float = 0.0, wpm: float = 0.0) -> tuple[float, float, float]:
    """Coefficients (c3, c+, c-) with (c3 S3 + c+ S+ + c- S-) rho equal to
    ``w3 * v3 sigma_3 + wpm * (v+ sigma_- + v- sigma_+)``.

    The two basis rules are v3 sigma_3 = (S3/2 - S+ - S-) rho and
    v+ sigma_- + v- sigma_+ = -S3 rho / 2; everything else follows by linearity.
    """
    return (0.5 * w3 - 0.5 * wpm, -w3, -w3)


def density_from_fs(f12: float, f3: float, rho0) -> np.ndarray:
    """rho(t) = I/2 + [(f3/2 - f12) S3 - f3 (S+ + S-)] rho(0) / 2."""
    a = np.asarray(rho0.matrix if isinstance(rho0, ReducedDensity) else rho0, dtype=complex)
    gen = (0.5 * f3 - f12) * s_3(a) - f3 * (s_plus(a) + s_minus(a))
    return IDENTITY / 2 + gen / 2


@dataclass(frozen=True)
class TransferMap:
    """Affine map v -> matrix @ v + offset on Bloch vectors."""

    matrix: tuple[tuple[float, float, float], ...]
    offset: tuple[float, float, float] = (0.0, 0.0, 0.0)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=float)

    @property
    def determinant(self) -> float:
        return float(np.linalg.det(self.array))

    @property
    def is_singular(self) -> bool:
        return self.determinant == 0.0

    def apply(self, v: BlochVector) -> BlochVector:
        return BlochVector.from_sequence(self.array @ v.as_array() + np.array(self.offset))

    def compose(self, other: TransferMap) -> TransferMap:
        m = self.array @ other.array
        off = self.array @ np.array(other.offset) + np.array(self.offset)
        return TransferMap(tuple(map(tuple, m.tolist())), tuple(off.tolist()))


def transfer_from_fs(f12: float, f3: float) -> TransferMap:
    f12, f3 = float(f12), float(f3)
    return TransferMap(((f12, 0.0, 0.0), (0.0, f12, 0.0), (0.0, 0.0, f3)))
