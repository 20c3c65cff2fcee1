"""Exact reduced dynamics: finite-N spectral sums and the N -> infinity limit."""
from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .model import INFINITE, Method, ModelParams, Trajectory
from .special import dawson
from .spectrum import spectral_grid

_CHUNK = 256


def _finite_n(n) -> int:
    if n == INFINITE:
        raise DomainError("N is INFINITE: use limit_g / propagate_limit instead")
    if isinstance(n, float) and n.is_integer():
        n = int(n)
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise DomainError(f"bath size must be a non-negative integer, got {n!r}")
    return int(n)


def _times(t) -> tuple[np.ndarray, bool]:
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0):
        raise DomainError("times must be non-negative")
    return np.atleast_1d(arr).ravel(), arr.ndim == 0


def _spectral_sum(x: np.ndarray, weight: np.ndarray, summand) -> np.ndarray:
    out = np.empty_like(x)
    for i in range(0, len(x), _CHUNK):
        xs = x[i:i + _CHUNK, None]
        out[i:i + _CHUNK] = summand(xs) @ weight
    return out


def f12(n, alpha: float, t):
    """Transfer function of v+- for a bath of ``n`` spins."""
    n = _finite_n(n)
    x, scalar = _times(t)
    if n == 0:
        out = np.ones_like(x)
    else:
        g = spectral_grid(n)
        # summand is even in m, so only m >= 0 is summed with doubled weights
        out = _spectral_sum(alpha * x, g.fold_weight,
                            lambda xs: np.cos(2 * g.h_plus * xs) * np.cos(2 * g.h_minus * xs))
    return float(out[0]) if scalar else out


def f3(n, alpha: float, t):
    """Transfer function of v3 for a bath of ``n`` spins."""
    n = _finite_n(n)
    x, scalar = _times(t)
    if n == 0:
        out = np.ones_like(x)
    else:
        g = spectral_grid(n)
        out = _spectral_sum(alpha * x, g.weight, lambda xs: np.cos(4 * g.h_plus * xs))
    return float(out[0]) if scalar else out


def propagate_exact(params: ModelParams, times) -> Trajectory:
    times = np.asarray(times, dtype=float)
    return Trajectory.from_transfer(
        times, f12(params.n, params.alpha, times), f3(params.n, params.alpha, times),
        params, Method.EXACT.value,
    )


def limit_g(alpha: float, t):
    """g(t) = -sqrt(2) a t D(sqrt(2) a t), the N -> infinity relaxation function.

    Same function as -a t exp(-2 a^2 t^2) sqrt(pi/2) erfi(sqrt(2) a t), written
    through Dawson's integral so that nothing overflows.
    """
    x, scalar = _times(t)
    y = math.sqrt(2) * alpha * x
    out = -y * dawson(y)
    return float(out[0]) if scalar else out


def limit_fs(alpha: float, t):
    g = limit_g(alpha, t)
    return 1 + g, 1 + 2 * g


def propagate_limit(params: ModelParams, times) -> Trajectory:
    """N -> infinity dynamics; ``params.alpha`` is the rescaled coupling."""
    times = np.asarray(times, dtype=float)
    f12_, f3_ = limit_fs(params.alpha, times)
    return Trajectory.from_transfer(times, f12_, f3_, params, Method.LIMIT.value)
