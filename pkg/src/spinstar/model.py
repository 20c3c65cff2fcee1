"""Model parameters and trajectories shared by the solvers and the reports."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .bloch import PHYSICAL_TOL, BlochVector, entropy
from .errors import DomainError

#: Bath size of the analytic N -> infinity limit (coupling read as alpha/sqrt(N)).
INFINITE = math.inf


class Method(str, Enum):
    EXACT = "exact"
    LIMIT = "limit"
    TCL = "tcl"
    NZ = "nz"
    BORN = "born"
    REDFIELD = "redfield"


class Convention(str, Enum):
    """Partial-cumulant convention of the NZ memory kernel."""

    PAPER = "paper"
    MOMENT_MATCHED = "moment-matched"


def check_bath_size(n) -> int | float:
    if n == INFINITE:
        return INFINITE
    if isinstance(n, float) and n.is_integer():
        n = int(n)
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 0:
        raise DomainError(f"bath size must be a non-negative integer or INFINITE, got {n!r}")
    return int(n)


@dataclass(frozen=True)
class ModelParams:
    n: int | float
    alpha: float = 1.0
    v0: BlochVector = BlochVector(1.0, 0.0, 1.0)

    def __post_init__(self):
        object.__setattr__(self, "n", check_bath_size(self.n))
        if not math.isfinite(self.alpha):
            raise DomainError("coupling alpha must be finite")
        if not isinstance(self.v0, BlochVector):
            object.__setattr__(self, "v0", BlochVector.from_sequence(self.v0))

    @property
    def is_infinite(self) -> bool:
        return self.n == INFINITE


def _radius_and_entropy(v1, v2, v3):
    r = np.sqrt(v1**2 + v2**2 + v3**2)
    s = np.full_like(r, np.nan)
    ok = r <= 1 + PHYSICAL_TOL
    if np.any(ok):
        s[ok] = entropy(np.minimum(r[ok], 1.0))
    return r, s


@dataclass(frozen=True)
class Trajectory:
    """Sampled Bloch components of the central spin.

    ``entropy`` is NaN wherever a truncated method leaves the Bloch sphere.
    """

    times: np.ndarray
    v1: np.ndarray
    v2: np.ndarray
    v3: np.ndarray
    r: np.ndarray
    entropy: np.ndarray
    method: str
    params: ModelParams
    order: int | None = None
    convention: str | None = None
    extra: dict = field(default_factory=dict, compare=False)

    @classmethod
    def from_components(cls, times, v1, v2, v3, params, method, order=None, convention=None):
        times = np.asarray(times, dtype=float)
        v1, v2, v3 = (np.asarray(x, dtype=float) for x in (v1, v2, v3))
        r, s = _radius_and_entropy(v1, v2, v3)
        for a in (times, v1, v2, v3, r, s):
            a.setflags(write=False)
        return cls(times, v1, v2, v3, r, s, str(method), params, order, convention)

    @classmethod
    def from_transfer(cls, times, f12, f3, params: ModelParams, method, order=None, convention=None):
        """v+-(t) = f12(t) v+-(0), v3(t) = f3(t) v3(0)."""
        f12 = np.asarray(f12, dtype=float)
        f3 = np.asarray(f3, dtype=float)
        v = params.v0
        return cls.from_components(times, f12 * v.v1, f12 * v.v2, f3 * v.v3, params, method, order, convention)

    def __len__(self) -> int:
        return len(self.times)

    @property
    def v_plus(self) -> np.ndarray:
        return (self.v1 + 1j * self.v2) / 2

    def bloch(self, i: int) -> BlochVector:
        return BlochVector(float(self.v1[i]), float(self.v2[i]), float(self.v3[i]))

    def check(self, tol: float = 1e-12) -> None:
        n = len(self.times)
        if any(len(a) != n for a in (self.v1, self.v2, self.v3, self.r, self.entropy)):
            raise DomainError("trajectory series lengths differ")
        if n > 1 and np.any(np.diff(self.times) <= 0):
            raise DomainError("trajectory times must be strictly ascending")
        r, s = _radius_and_entropy(self.v1, self.v2, self.v3)
        if np.max(np.abs(r - self.r), initial=0) > tol:
            raise DomainError("stored radius does not match the components")
        both = ~np.isnan(s)
        if np.any(np.isnan(self.entropy) != ~both) or np.max(np.abs(s[both] - self.entropy[both]), initial=0) > tol:
            raise DomainError("stored entropy does not match the components")
