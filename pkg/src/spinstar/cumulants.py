"""Liouvillian moments and the TCL / NZ expansion coefficients.

The projected moments P L^2k P act diagonally on the two sectors v3 and
v+-, so every quantity here is a scalar sequence of exact polynomials in N.
Sequences are indexed by full order n (mu[0] = 1, odd entries zero).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .correlations import q_polynomial, r_polynomial
from .errors import DomainError, UnsupportedOrderError
from .model import Convention, Method
from .polynomial import PolynomialInN

MAX_ORDER = 32
PAPER_MAX_ORDER = 6

ZERO = PolynomialInN()
ONE = PolynomialInN([1])


class Channel(str, Enum):
    V3 = "v3"
    VPM = "vpm"


def _check_order(order: int, limit: int = MAX_ORDER) -> None:
    if order < 2 or order % 2:
        raise DomainError(f"truncation order must be an even integer >= 2, got {order}")
    if order > limit:
        raise DomainError(f"order {order} exceeds the supported bound {limit}")


@lru_cache(maxsize=None)
def moment(channel: Channel, k: int) -> PolynomialInN:
    """Channel scalar mu_2k of P L^2k P (alpha factored out)."""
    channel = Channel(channel)
    if k < 1:
        raise DomainError(f"moment index must be >= 1, got {k}")
    if channel is Channel.V3:
        return (-16) ** k * q_polynomial(k)
    total = ZERO
    for l in range(k + 1):
        total = total + math.comb(2 * k, 2 * l) * r_polynomial(k - l, l)
    return (-4) ** k * total


@dataclass(frozen=True)
class MomentSequence:
    channel: Channel
    entries: tuple[PolynomialInN, ...]  # mu_2, mu_4, ..., mu_2K

    def __getitem__(self, n: int) -> PolynomialInN:
        """Moment of full order n; odd orders vanish identically."""
        if n == 0:
            return ONE
        if n % 2:
            return ZERO
        return self.entries[n // 2 - 1]

    @property
    def max_order(self) -> int:
        return 2 * len(self.entries)

    def full(self) -> list[PolynomialInN]:
        return [self[n] for n in range(self.max_order + 1)]


def moment_sequence(channel: Channel, order: int) -> MomentSequence:
    _check_order(order)
    channel = Channel(channel)
    return MomentSequence(channel, tuple(moment(channel, k) for k in range(1, order // 2 + 1)))


# --- generic recursions over any commutative ring (polynomials or Fractions) ---

def classical_cumulants(mu: list) -> list:
    """kappa_n = mu_n - sum_{m<n} C(n-1, m-1) kappa_m mu_{n-m}; mu[0] must be 1."""
    kappa = [0 * mu[0]] * len(mu)
    for n in range(1, len(mu)):
        acc = mu[n]
        for m in range(1, n):
            if mu[n - m] != 0 and kappa[m] != 0:
                acc = acc - math.comb(n - 1, m - 1) * kappa[m] * mu[n - m]
        kappa[n] = acc
    return kappa


def moment_matched_cumulants(mu: list) -> list:
    """p_n = mu_n - sum_{m=2}^{n-2} p_m mu_{n-m}.

    These make the convolution kernel sum p_n t^(n-2)/(n-2)! reproduce the
    moment sequence order by order, i.e. sum_n mu_n x^n = 1/(1 - sum_n p_n x^n).
    """
    p = [0 * mu[0]] * len(mu)
    for n in range(1, len(mu)):
        acc = mu[n]
        for m in range(1, n):
            if p[m] != 0 and mu[n - m] != 0:
                acc = acc - p[m] * mu[n - m]
        p[n] = acc
    return p


def paper_partial_cumulants(mu: list) -> list:
    # relations as printed, available through order 6 only
    if len(mu) - 1 > PAPER_MAX_ORDER:
        raise UnsupportedOrderError(
            f"the published partial-cumulant relations stop at order {PAPER_MAX_ORDER}")
    p = [0 * mu[0]] * len(mu)
    if len(mu) > 2:
        p[2] = mu[2]
    if len(mu) > 4:
        p[4] = mu[4] - mu[2] * mu[2]
    if len(mu) > 6:
        p[6] = mu[6] - 2 * mu[2] * mu[4] + 3 * mu[2] ** 3
    return p


def geometric_moments(p: list, max_order: int) -> list:
    """Moments generated by a kernel: sum mu_n x^n = 1 / (1 - sum p_n x^n)."""
    mu = [1 + 0 * p[0]] + [0 * p[0]] * max_order
    for n in range(1, max_order + 1):
        acc = 0 * p[0]
        for m in range(1, min(n, len(p) - 1) + 1):
            if p[m] != 0:
                acc = acc + p[m] * mu[n - m]
        mu[n] = acc
    return mu


def ordered_cumulants(channel: Channel, order: int) -> list[PolynomialInN]:
    """TCL coefficients kappa_2, kappa_4, ..., kappa_order (classical cumulants)."""
    kappa = classical_cumulants(moment_sequence(channel, order).full())
    return kappa[2::2]


def partial_cumulants(channel: Channel, order: int,
                      convention: Convention = Convention.MOMENT_MATCHED) -> list[PolynomialInN]:
    """NZ kernel coefficients p_2, p_4, ..., p_order under ``convention``."""
    convention = Convention(convention)
    if convention is Convention.PAPER:
        _check_order(order)
        if order > PAPER_MAX_ORDER:
            raise UnsupportedOrderError(
                f"the published partial-cumulant relations stop at order {PAPER_MAX_ORDER}; "
                "use the moment-matched convention for higher orders")
        p = paper_partial_cumulants(moment_sequence(channel, order).full())
    else:
        p = moment_matched_cumulants(moment_sequence(channel, order).full())
    return p[2::2]


@dataclass(frozen=True)
class CoefficientSet:
    """Expansion coefficients c_2n of the truncated TCL or NZ equation.

    ``coeffs`` hold the channel cumulants themselves, which enter the
    equations of motion as TCL: dv/dt = sum c_2n a^2n t^(2n-1)/(2n-1)! v(t) and
    NZ: dv/dt = sum c_2n a^2n int (t-s)^(2n-2)/(2n-2)! v(s) ds.
    In the published tables the v3 sector is listed as q = c/2 and the v+-
    sector as s = c; :meth:`published` applies that normalization.
    """

    method: Method
    channel: Channel
    coeffs: tuple[PolynomialInN, ...]
    convention: Convention | None = None

    @property
    def order(self) -> int:
        return 2 * len(self.coeffs)

    def published(self) -> list[PolynomialInN]:
        if self.channel is Channel.V3:
            return [c / 2 for c in self.coeffs]
        return list(self.coeffs)

    def at(self, n) -> list:
        return [c(n) for c in self.coeffs]

    def to_json(self) -> dict:
        return {
            "method": self.method.value,
            "convention": self.convention.value if self.convention else None,
            "channel": self.channel.value,
            "order": self.order,
            "coeffs": [c.to_strings() for c in self.coeffs],
            "published": [c.to_strings() for c in self.published()],
        }

    @classmethod
    def from_json(cls, data: dict) -> CoefficientSet:
        conv = data.get("convention")
        return cls(
            Method(data["method"]),
            Channel(data["channel"]),
            tuple(PolynomialInN.from_strings(c) for c in data["coeffs"]),
            Convention(conv) if conv else None,
        )


def coefficient_set(method, channel, order: int, convention=None) -> CoefficientSet:
    method, channel = Method(method), Channel(channel)
    if method is Method.REDFIELD:
        method, order = Method.TCL, 2
    elif method is Method.BORN:
        method, order = Method.NZ, 2
    if method is Method.TCL:
        if convention is not None:
            raise DomainError("a partial-cumulant convention applies to NZ only")
        return CoefficientSet(method, channel, tuple(ordered_cumulants(channel, order)))
    if method is Method.NZ:
        convention = Convention(convention or Convention.MOMENT_MATCHED)
        return CoefficientSet(method, channel, tuple(partial_cumulants(channel, order, convention)), convention)
    raise DomainError(f"no expansion coefficients for method {method.value!r}")
