"""Bath correlation functions of the unpolarized spin bath.

r_value(a, b, N) = 2^-N tr[(J+J-)^a (J-J+)^b]; Q_k is the case (k, 0).
The two-index label R_l^{k-l} corresponds to (a, b) = (k-l, l).
Both operators are diagonal on |j, m, nu>, so the trace is a weighted sum
over the bath spectrum, carried out in exact integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ConsistencyError, DomainError
from .polynomial import PolynomialInN
from .spectrum import bath_spectrum, h_squared

MAX_POWER = 32


def _check(a: int, b: int, n: int | None = None) -> None:
    if a < 0 or b < 0 or a + b < 1:
        raise DomainError(f"need a, b >= 0 and a + b >= 1, got ({a}, {b})")
    if a + b > MAX_POWER:
        raise DomainError(f"total power {a + b} exceeds the supported bound {MAX_POWER}")
    if n is not None and n < 1:
        raise DomainError(f"bath size must be at least 1, got {n}")


@lru_cache(maxsize=4096)
def r_value(a: int, b: int, n: int) -> Fraction:
    _check(a, b, n)
    total = 0
    for two_j, mult in bath_spectrum(n).entries:
        s = 0
        for two_m in range(-two_j, two_j + 1, 2):
            s += h_squared(two_j, two_m) ** a * h_squared(two_j, -two_m) ** b
        total += mult * s
    return Fraction(total, 2**n)


def q_value(k: int, n: int) -> Fraction:
    return r_value(k, 0, n)


@lru_cache(maxsize=1024)
def r_polynomial(a: int, b: int) -> PolynomialInN:
    """Exact degree-(a+b) polynomial in N, interpolated at N = 1..a+b+1."""
    _check(a, b)
    k = a + b
    poly = PolynomialInN.interpolate([(n, r_value(a, b, n)) for n in range(1, k + 2)])
    check = k + 2
    if poly(check) != r_value(a, b, check):
        raise ConsistencyError(f"interpolated R({a},{b}) fails the check at N={check}")
    return poly


def q_polynomial(k: int) -> PolynomialInN:
    return r_polynomial(k, 0)


def asymptotic_value(k: int, n: float) -> float:
    """Leading large-N behaviour k! N^k / 2^k shared by all correlations of order k."""
    if k < 1 or n < 1:
        raise DomainError("need k >= 1 and N >= 1")
    return math.factorial(k) * float(n) ** k / 2.0**k


@dataclass(frozen=True)
class CorrelationTable:
    """All R(a, b) polynomials with a + b <= k_max."""

    k_max: int
    entries: dict

    def __getitem__(self, ab: tuple[int, int]) -> PolynomialInN:
        return self.entries[ab]

    def q(self, k: int) -> PolynomialInN:
        return self.entries[(k, 0)]


def correlation_table(k_max: int) -> CorrelationTable:
    entries = {
        (a, k - a): r_polynomial(a, k - a)
        for k in range(1, k_max + 1)
        for a in range(k + 1)
    }
    return CorrelationTable(k_max, entries)


def polynomial_to_json(a: int, b: int, poly: PolynomialInN) -> dict:
    return {"a": a, "b": b, "coeffs": poly.to_strings()}


def polynomial_from_json(data: dict) -> tuple[int, int, PolynomialInN]:
    return int(data["a"]), int(data["b"]), PolynomialInN.from_strings(data["coeffs"])
