"""Truncated TCL / NZ equations of motion and their second-order special cases.

Each method reduces to one scalar transfer function per channel, so
v+-(t) = F_vpm(t) v+-(0) and v3(t) = F_v3(t) v3(0).

TCL:  dv/dt = sum_n c_2n a^2n t^(2n-1)/(2n-1)! v(t), solved in closed form.
NZ:   dv/dt = sum_n c_2n a^2n int_0^t (t-s)^(2n-2)/(2n-2)! v(s) ds, solved
      through the companion system w_j = int_0^t (t-s)^j/j! v(s) ds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from . import exact
from .cumulants import (
    Channel,
    classical_cumulants,
    coefficient_set,
    geometric_moments,
    moment,
)
from .errors import DomainError, IntegrationError
from .model import Convention, Method, ModelParams, Trajectory
from .correlations import q_polynomial

MAX_TAYLOR_POWER = 12


@dataclass(frozen=True)
class SolverSpec:
    method: Method
    order: int = 2
    convention: Convention | None = None
    tolerance: float = 1e-12

    def __post_init__(self):
        method = Method(self.method)
        object.__setattr__(self, "method", method)
        if self.convention is not None:
            object.__setattr__(self, "convention", Convention(self.convention))
            if method not in (Method.NZ, Method.BORN):
                raise DomainError("a partial-cumulant convention applies to NZ only")
        if method in (Method.TCL, Method.NZ):
            if self.order < 2 or self.order % 2:
                raise DomainError(f"truncation order must be even and >= 2, got {self.order}")
        elif method in (Method.BORN, Method.REDFIELD) and self.order != 2:
            raise DomainError(f"{method.value} is a second-order method, got order {self.order}")
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")

    def resolved(self) -> SolverSpec:
        """Map the Born / Redfield aliases to NZ2 / TCL2."""
        if self.method is Method.BORN:
            return SolverSpec(Method.NZ, 2, self.convention, self.tolerance)
        if self.method is Method.REDFIELD:
            return SolverSpec(Method.TCL, 2, None, self.tolerance)
        return self

    @property
    def label(self) -> str:
        s = self.resolved()
        if s.method in (Method.TCL, Method.NZ):
            return f"{s.method.value}{s.order}"
        return s.method.value


def _float_coeffs(spec: SolverSpec, channel: Channel, n: int) -> list[float]:
    cs = coefficient_set(spec.method, channel, spec.order, spec.convention)
    return [float(c) for c in cs.at(n)]


def _check_finite(params_n) -> int:
    if params_n == math.inf:
        raise DomainError("perturbative solvers need a finite bath size")
    return int(params_n)


# --- TCL ----------------------------------------------------------------------

def tcl_exponent(coeffs, alpha: float, times) -> np.ndarray:
    """log of the TCL transfer function: sum c_2n (a t)^2n / (2n)!."""
    x = alpha * np.asarray(times, dtype=float)
    out = np.zeros_like(x)
    for i, c in enumerate(coeffs, start=1):
        out += c * x ** (2 * i) / math.factorial(2 * i)
    return out


def tcl_transfer(coeffs, alpha: float, times) -> np.ndarray:
    with np.errstate(over="ignore"):
        return np.exp(tcl_exponent(coeffs, alpha, times))


# --- NZ -------------------------------------------------------------------------

def companion_matrix(kernel) -> np.ndarray:
    """Generator of y = (v, w_0, ..., w_{2K-2}) for kernel weights ``kernel[n-1] = c_2n a^2n``."""
    k = len(kernel)
    dim = 2 * k
    a = np.zeros((dim, dim))
    for i, c in enumerate(kernel):
        a[0, 1 + 2 * i] = c          # dv/dt += c_2n a^2n w_{2n-2}
    a[1, 0] = 1.0                     # dw_0/dt = v
    for j in range(1, dim - 1):
        a[1 + j, j] = 1.0             # dw_j/dt = w_{j-1}
    return a


def _nz_closed_form(c: float, times: np.ndarray) -> np.ndarray:
    # v'' = c v, v(0) = 1, v'(0) = 0
    if c < 0:
        return np.cos(math.sqrt(-c) * times)
    if c > 0:
        return np.cosh(math.sqrt(c) * times)
    return np.ones_like(times)


def nz_companion(kernel, times, tolerance: float = 1e-12) -> np.ndarray:
    times = np.asarray(times, dtype=float)
    if len(kernel) == 1:
        return _nz_closed_form(kernel[0], times)
    a = companion_matrix(kernel)
    y0 = np.zeros(a.shape[0])
    y0[0] = 1.0
    t_end = float(np.max(times, initial=0.0))
    if t_end == 0.0:
        return np.ones_like(times)
    order = np.argsort(times, kind="stable")
    # scipy clamps rtol below ~2.2e-14; the endpoint check still uses the requested value
    rtol = max(tolerance, 1e-13)
    sol = solve_ivp(lambda t, y: a @ y, (0.0, t_end), y0, method="DOP853",
                    t_eval=times[order], rtol=rtol, atol=tolerance)
    if sol.status != 0:
        raise IntegrationError(f"NZ integration failed: {sol.message}")
    out = np.empty_like(times)
    out[order] = sol.y[0]
    # a-posteriori check of the endpoint against the matrix exponential
    ref = expm(a * t_end)[0, 0]
    err = abs(out[order][-1] - ref) / max(1.0, abs(ref))
    if not err <= 1e4 * tolerance:
        raise IntegrationError(f"NZ integration missed tolerance {tolerance:g}", achieved_error=err)
    return out


def nz_laplace(kernel, times) -> np.ndarray:
    """Inverse Laplace transform by partial fractions, orders 2 and 4 only.

    V(s) = s^(2K-1) / (s^(2K) - sum_n k_n s^(2K-2n)); in the variable u = s^2 the
    denominator has at most two roots u_i and v(t) = sum_i A_i cosh(sqrt(u_i) t).
    """
    times = np.asarray(times, dtype=float)
    if len(kernel) == 1:
        return _nz_closed_form(kernel[0], times)
    if len(kernel) != 2:
        raise DomainError("the Laplace backend covers orders 2 and 4 only")
    k1, k2 = kernel
    disc = complex(k1 * k1 + 4 * k2) ** 0.5
    if disc == 0:
        raise DomainError("degenerate roots; use the companion backend")
    u = ((k1 + disc) / 2, (k1 - disc) / 2)
    out = np.zeros(times.shape, dtype=complex)
    for ui, uj in (u, u[::-1]):
        out += ui / (ui - uj) * np.cosh(np.sqrt(complex(ui)) * times)
    return out.real


def nz_volterra(kernel, t_max: float, steps: int, substeps: int = 16,
                levels: int = 3) -> tuple[np.ndarray, np.ndarray]:
    """Direct quadrature of v(t) = 1 + int_0^t k(t-s) v(s) ds on a uniform grid.

    k(u) = sum_n kernel[n-1] u^(2n-1)/(2n-1)!. The trapezoidal rule with full
    memory is run with ``substeps`` cells per output interval; its error has an
    expansion in even powers of h, so ``levels`` successively halved grids are
    combined by Richardson extrapolation. Returns (grid, v) with steps+1 points.
    """
    if steps < 1 or substeps < 1 or t_max <= 0:
        raise DomainError("need steps >= 1, substeps >= 1 and t_max > 0")

    def trapezoid(m: int) -> np.ndarray:
        h = t_max / m
        u = h * np.arange(m + 1)
        kv = np.zeros(m + 1)
        for i, c in enumerate(kernel, start=1):
            kv += c * u ** (2 * i - 1) / math.factorial(2 * i - 1)
        v = np.empty(m + 1)
        v[0] = 1.0
        # k(0) = 0, so each step is explicit
        for i in range(1, m + 1):
            mem = kv[i - 1:0:-1] @ v[1:i] if i > 1 else 0.0
            v[i] = 1.0 + h * (0.5 * kv[i] * v[0] + mem)
        return v

    table = []
    for lvl in range(levels):
        stride = substeps * 2**lvl
        table.append(trapezoid(steps * stride)[::stride])
    for j in range(1, levels):
        factor = 4.0**j
        table = [(factor * table[i + 1] - table[i]) / (factor - 1) for i in range(len(table) - 1)]
    grid = np.linspace(0.0, t_max, steps + 1)
    return grid, table[0]


def nz_transfer(kernel, times, tolerance: float = 1e-12, backend: str = "companion") -> np.ndarray:
    times = np.asarray(times, dtype=float)
    if backend == "companion":
        return nz_companion(kernel, times, tolerance)
    if backend == "laplace":
        return nz_laplace(kernel, times)
    if backend == "volterra":
        steps = len(times) - 1
        if steps < 1 or times[0] != 0 or not np.allclose(np.diff(times), times[-1] / steps, rtol=1e-12, atol=0):
            raise DomainError("the Volterra backend needs a uniform grid starting at t = 0")
        return nz_volterra(kernel, float(times[-1]), steps)[1]
    raise DomainError(f"unknown NZ backend {backend!r}")


# --- dispatch -------------------------------------------------------------------

def channel_transfer(spec: SolverSpec, channel: Channel, n, alpha: float, times,
                     backend: str = "companion") -> np.ndarray:
    """Transfer function of one channel under ``spec``."""
    spec = spec.resolved()
    channel = Channel(channel)
    times = np.asarray(times, dtype=float)
    if spec.method is Method.EXACT:
        fn = exact.f3 if channel is Channel.V3 else exact.f12
        return fn(n, alpha, times)
    if spec.method is Method.LIMIT:
        f12_, f3_ = exact.limit_fs(alpha, times)
        return f3_ if channel is Channel.V3 else f12_
    n = _check_finite(n)
    coeffs = _float_coeffs(spec, channel, n)
    if spec.method is Method.TCL:
        return tcl_transfer(coeffs, alpha, times)
    kernel = [c * alpha ** (2 * i) for i, c in enumerate(coeffs, start=1)]
    return nz_transfer(kernel, times, spec.tolerance, backend)


def solve(spec: SolverSpec, params: ModelParams, times, backend: str = "companion") -> Trajectory:
    times = np.asarray(times, dtype=float)
    if np.any(times < 0):
        raise DomainError("times must be non-negative")
    fpm = channel_transfer(spec, Channel.VPM, params.n, params.alpha, times, backend)
    f3_ = channel_transfer(spec, Channel.V3, params.n, params.alpha, times, backend)
    r = spec.resolved()
    order = r.order if r.method in (Method.TCL, Method.NZ) else None
    conv = None
    if r.method is Method.NZ:
        conv = (r.convention or Convention.MOMENT_MATCHED).value
    return Trajectory.from_transfer(times, fpm, f3_, params, spec.method.value, order, conv)


def tcl_solve(spec: SolverSpec, params: ModelParams, times) -> Trajectory:
    if spec.method not in (Method.TCL, Method.REDFIELD):
        raise DomainError(f"tcl_solve needs a TCL or Redfield spec, got {spec.method.value}")
    return solve(spec, params, times)


def nz_solve(spec: SolverSpec, params: ModelParams, times, backend: str = "companion") -> Trajectory:
    if spec.method not in (Method.NZ, Method.BORN):
        raise DomainError(f"nz_solve needs an NZ or Born spec, got {spec.method.value}")
    return solve(spec, params, times, backend)


# --- exact Taylor series of the solutions -----------------------------------------

def _exp_series(g: list[Fraction], max_power: int) -> list[Fraction]:
    # f = exp(g), g[0] = 0: n f_n = sum_k k g_k f_{n-k}
    f = [Fraction(1)] + [Fraction(0)] * max_power
    for n in range(1, max_power + 1):
        f[n] = sum((k * g[k] * f[n - k] for k in range(1, n + 1) if g[k]), Fraction(0)) / n
    return f


def taylor_of_solution(spec: SolverSpec, channel: Channel, n, max_power: int) -> list[Fraction]:
    """Exact Taylor coefficients of the channel transfer function in powers of (alpha t).

    Entry i multiplies (alpha t)^i; odd entries vanish. For LIMIT, ``n`` is ignored
    and the series is in powers of the rescaled coupling times t.
    """
    if not 0 <= max_power <= MAX_TAYLOR_POWER:
        raise DomainError(f"max_power must lie in [0, {MAX_TAYLOR_POWER}]")
    spec = spec.resolved()
    channel = Channel(channel)
    even_max = max_power - max_power % 2
    if spec.method is Method.LIMIT:
        mu = [Fraction(1)] + [Fraction(0)] * max_power
        for k in range(1, even_max // 2 + 1):
            base = Fraction((-8) ** k * math.factorial(k))
            mu[2 * k] = base if channel is Channel.V3 else base / 2
        return [mu[i] / math.factorial(i) for i in range(max_power + 1)]
    n = _check_finite(n)
    if spec.method is Method.EXACT:
        mu = [Fraction(1)] + [Fraction(0)] * max_power
        for k in range(1, even_max // 2 + 1):
            mu[2 * k] = moment(channel, k)(n)
        return [mu[i] / math.factorial(i) for i in range(max_power + 1)]
    cs = coefficient_set(spec.method, channel, spec.order, spec.convention).at(n)
    if spec.method is Method.TCL:
        g = [Fraction(0)] * (max_power + 1)
        for i, c in enumerate(cs, start=1):
            if 2 * i <= max_power:
                g[2 * i] = c / math.factorial(2 * i)
        return _exp_series(g, max_power)
    p = [Fraction(0)] * (max_power + 1)
    for i, c in enumerate(cs, start=1):
        if 2 * i <= max_power:
            p[2 * i] = c
    mu = geometric_moments(p, max_power)
    return [mu[i] / math.factorial(i) for i in range(max_power + 1)]


def exact_series_check(channel: Channel, n: int, max_power: int) -> list[Fraction]:
    """Taylor coefficients of the exact solution rebuilt from TCL cumulants (exp of cumulant series)."""
    mu = [Fraction(1)] + [Fraction(0)] * max_power
    for k in range(1, max_power // 2 + 1):
        mu[2 * k] = moment(channel, k)(n)
    kappa = classical_cumulants(mu)
    g = [kappa[i] / math.factorial(i) if i else Fraction(0) for i in range(max_power + 1)]
    return _exp_series(g, max_power)


# --- Born-Markov diagnostic --------------------------------------------------------

@dataclass(frozen=True)
class BornMarkovReport:
    """Would-be Markov rate of the Redfield generator, 8 a^2 Q_1 t = 4 N a^2 t."""

    times: np.ndarray
    correlation_integral: np.ndarray  # int_0^t Q_1 ds
    rates: np.ndarray
    rate_over_t: float
    unbounded: bool


def born_markov_diagnostic(params: ModelParams, t_grid) -> BornMarkovReport:
    n = _check_finite(params.n)
    t = np.asarray(t_grid, dtype=float)
    q1 = float(q_polynomial(1)(n))
    integral = q1 * t
    rates = 8 * params.alpha**2 * integral
    slope = 8 * params.alpha**2 * q1
    # the bath correlation never decays, so the integrand never vanishes
    unbounded = bool(slope > 0 and len(t) > 1 and np.all(np.diff(rates) > 0))
    return BornMarkovReport(t, integral, rates, slope, unbounded)
