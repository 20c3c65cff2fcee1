"""Oracle suite behind ``spinstar verify``: dense brute force plus cross-module identities."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .bloch import BlochVector
from .correlations import q_polynomial, q_value, r_value
from .cumulants import Channel, moment
from .exact import f3, f12
from .oracle import invariant_subspace_residual, propagate_dense, trace_word, verify_liouvillian_moments
from .solvers import SolverSpec, channel_transfer, nz_laplace, taylor_of_solution
from .model import Method


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_dense_dynamics(n_max: int = 6, samples: int = 20, seed: int = 7) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for n in range(1, n_max + 1):
        for _ in range(samples):
            v = rng.normal(size=3)
            v *= rng.uniform(0, 1) / np.linalg.norm(v)
            t = rng.uniform(0, 3)
            got = propagate_dense(BlochVector(*v), n, 1.0, t).as_array()
            a, b = f12(n, 1.0, t), f3(n, 1.0, t)
            worst = max(worst, float(np.max(np.abs(got - [a * v[0], a * v[1], b * v[2]]))))
    return CheckResult("dense vs spectral dynamics", worst <= 1e-10, f"max deviation {worst:.2e}")


def check_trace_words(max_len: int = 4, n_max: int = 6) -> CheckResult:
    bad = []
    for n in range(1, n_max + 1):
        for length in range(1, max_len + 1):
            for word in itertools.product(("pm", "mp"), repeat=length):
                a = word.count("pm")
                if trace_word(word, n) != r_value(a, length - a, n):
                    bad.append((n, word))
    return CheckResult("operator-word traces vs spectral correlations", not bad,
                       f"{len(bad)} mismatches" if bad else "all equal")


def check_liouvillian_moments(n_max: int = 4, k_max: int = 3) -> CheckResult:
    worst = 0.0
    for n in range(1, n_max + 1):
        for c in verify_liouvillian_moments(n, k_max):
            p3 = float(moment(Channel.V3, c.k)(n))
            ppm = float(moment(Channel.VPM, c.k)(n))
            rel = max(abs(c.v3_scalar - p3) / abs(p3), abs(c.vpm_scalar - ppm) / abs(ppm))
            worst = max(worst, rel / 1e-9, c.odd_residual / 1e-9 / max(1, abs(p3)),
                        c.off_channel_residual / 1e-9 / max(1, abs(p3)))
    return CheckResult("Liouvillian moments by nested commutators", worst <= 1.0,
                       f"worst error / tolerance = {worst:.2e}")


def check_invariant_subspaces(n_max: int = 4) -> CheckResult:
    worst = max(invariant_subspace_residual(n) for n in range(1, n_max + 1))
    return CheckResult("two-dimensional invariant subspaces of H", worst <= 1e-12, f"max leakage {worst:.2e}")


def check_moment_definition(k_max: int = 6, n_max: int = 8) -> CheckResult:
    ok = all(moment(Channel.V3, k)(n) / (-16) ** k == q_value(k, n)
             for k in range(1, k_max + 1) for n in range(1, n_max + 1))
    return CheckResult("v3 moments equal (-16)^k Q_k", ok, "exact")


def check_taylor_of_spectral_sums(max_power: int = 8) -> CheckResult:
    """Taylor coefficients of the spectral sums (float) against exact moments."""
    from .spectrum import spectral_grid

    worst = 0.0
    for n in (1, 2, 5, 50):
        g = spectral_grid(n)
        for k in range(1, max_power // 2 + 1):
            f3_coeff = float(np.sum(g.weight * (-16 * g.h_plus**2) ** k)) / math.factorial(2 * k)
            exact3 = float(taylor_of_solution(SolverSpec(Method.EXACT), Channel.V3, n, max_power)[2 * k])
            # f12 coefficient: sum_l C(2k,2l) (2h+)^(2k-2l) (2h-)^(2l) (-1)^k / (2k)!
            terms = sum(math.comb(2 * k, 2 * l) * (2 * g.h_plus) ** (2 * k - 2 * l) * (2 * g.h_minus) ** (2 * l)
                        for l in range(k + 1))
            f12_coeff = (-1) ** k * float(np.sum(g.weight * terms)) / math.factorial(2 * k)
            exact12 = float(taylor_of_solution(SolverSpec(Method.EXACT), Channel.VPM, n, max_power)[2 * k])
            worst = max(worst, abs(f3_coeff - exact3) / abs(exact3), abs(f12_coeff - exact12) / abs(exact12))
    return CheckResult("spectral-sum Taylor series vs exact moments", worst <= 1e-9, f"max rel {worst:.2e}")


def check_nz_backends(n: int = 100) -> CheckResult:
    t = np.linspace(0, 0.3, 61)
    worst = 0.0
    for ch in Channel:
        for conv in ("paper", "moment-matched"):
            spec = SolverSpec(Method.NZ, 4, conv)
            a = channel_transfer(spec, ch, n, 1.0, t)
            b = channel_transfer(spec, ch, n, 1.0, t, backend="laplace")
            worst = max(worst, float(np.max(np.abs(a - b) / np.maximum(1, np.abs(b)))))
    return CheckResult("NZ4 companion ODE vs Laplace partial fractions", worst <= 1e-9, f"max rel {worst:.2e}")


def check_published_tables() -> CheckResult:
    from .correlations import r_polynomial
    from .polynomial import PolynomialInN as P

    F = Fraction
    expected = {
        (1, 0): P([0, F(1, 2)]),
        (2, 0): P([0, 0, F(1, 2)]),
        (3, 0): P([0, F(1, 2), F(-3, 4), F(3, 4)]),
        (4, 0): P([0, -2, 5, -4, F(3, 2)]),
        (1, 1): P([0, F(-1, 2), F(1, 2)]),
        (1, 2): P([0, F(1, 2), F(-5, 4), F(3, 4)]),
        (1, 3): P([0, F(-5, 2), F(23, 4), F(-19, 4), F(3, 2)]),
    }
    bad = [ab for ab, p in expected.items() if r_polynomial(*ab) != p]
    lead = all(q_polynomial(k).leading == Fraction(math.factorial(k), 2**k) for k in range(1, 9))
    return CheckResult("published correlation polynomials", not bad and lead,
                       f"mismatches: {bad}" if bad else "all equal")


ALL_CHECKS = (
    check_published_tables,
    check_moment_definition,
    check_trace_words,
    check_liouvillian_moments,
    check_invariant_subspaces,
    check_dense_dynamics,
    check_taylor_of_spectral_sums,
    check_nz_backends,
)


def run_checks() -> list[CheckResult]:
    out = []
    for fn in ALL_CHECKS:
        try:
            out.append(fn())
        except Exception as exc:  # a crashing check is a failed check
            out.append(CheckResult(fn.__name__, False, f"raised {type(exc).__name__}: {exc}"))
    return out
