"""Angular-momentum content of an unpolarized bath of N spin-1/2 particles.

Quantum numbers are stored doubled (two_j = 2j, two_m = 2m) so that every
key is an integer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError


def _check_j(two_j: int, n: int) -> None:
    if n < 0:
        raise DomainError(f"bath size must be non-negative, got {n}")
    if not 0 <= two_j <= n:
        raise DomainError(f"need 0 <= 2j <= N, got 2j={two_j}, N={n}")
    if (n - two_j) % 2:
        raise DomainError(f"2j={two_j} and N={n} must have equal parity")


def multiplicity(two_j: int, n: int) -> int:
    """Number of multiplets with total spin j among N spins-1/2 (exact)."""
    _check_j(two_j, n)
    k = (n - two_j) // 2
    return math.comb(n, k) - (math.comb(n, k - 1) if k >= 1 else 0)


def h(two_j: int, two_m: int) -> float:
    """sqrt((j+m)(j-m+1)), the matrix element of J_- between |j,m> and |j,m-1>."""
    if two_j < 0 or abs(two_m) > two_j or (two_j - two_m) % 2:
        raise DomainError(f"invalid quantum numbers 2j={two_j}, 2m={two_m}")
    return math.sqrt(h_squared(two_j, two_m))


def h_squared(two_j: int, two_m: int) -> int:
    # (j+m)(j-m+1) = (2j+2m)(2j-2m+2)/4, always an integer
    return (two_j + two_m) * (two_j - two_m + 2) // 4


@dataclass(frozen=True)
class BathSpectrum:
    n: int
    entries: tuple[tuple[int, int], ...]  # (two_j, multiplicity)

    def two_m_values(self, two_j: int) -> range:
        return range(-two_j, two_j + 1, 2)

    @property
    def dimension(self) -> int:
        return sum(mult * (two_j + 1) for two_j, mult in self.entries)

    def pairs(self):
        """Iterate (two_j, two_m, multiplicity) over the whole bath."""
        for two_j, mult in self.entries:
            for two_m in self.two_m_values(two_j):
                yield two_j, two_m, mult


@lru_cache(maxsize=256)
def bath_spectrum(n: int) -> BathSpectrum:
    if n < 0:
        raise DomainError(f"bath size must be non-negative, got {n}")
    entries = tuple((two_j, multiplicity(two_j, n)) for two_j in range(n % 2, n + 1, 2))
    return BathSpectrum(n, entries)


@dataclass(frozen=True)
class SpectralGrid:
    """Flattened (j, m) grid with float weights n(j,N)/2^N, read-only."""

    h_plus: np.ndarray   # h(j, m)
    h_minus: np.ndarray  # h(j, -m)
    weight: np.ndarray
    fold_weight: np.ndarray  # weights after m -> -m folding (zero for m < 0)


@lru_cache(maxsize=64)
def spectral_grid(n: int) -> SpectralGrid:
    # Python integers are unbounded, so n(j,N)/2^N is formed exactly and rounded once
    spec = bath_spectrum(n)
    hp, hm, w, fw = [], [], [], []
    denom = 2**n
    for two_j, two_m, mult in spec.pairs():
        wt = float(Fraction(mult, denom))
        hp.append(math.sqrt(h_squared(two_j, two_m)))
        hm.append(math.sqrt(h_squared(two_j, -two_m)))
        w.append(wt)
        fw.append(0.0 if two_m < 0 else (wt if two_m == 0 else 2 * wt))
    arrays = [np.array(a, dtype=float) for a in (hp, hm, w, fw)]
    for a in arrays:
        a.setflags(write=False)
    return SpectralGrid(*arrays)
