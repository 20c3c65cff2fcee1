"""Central spin coupled to a spin-star bath of N spins-1/2.

Exact reduced dynamics, the N -> infinity limit, exact bath correlation
polynomials, and time-convolutionless (TCL) / Nakajima-Zwanzig (NZ)
master equations truncated at any even order.
"""
from .bloch import (
    BlochVector,
    ReducedDensity,
    TransferMap,
    bloch_to_density,
    density_to_bloch,
    entropy,
    lindblad_translation,
    transfer_from_fs,
)
from .correlations import asymptotic_value, q_polynomial, q_value, r_polynomial, r_value
from .cumulants import (
    Channel,
    CoefficientSet,
    coefficient_set,
    moment,
    ordered_cumulants,
    partial_cumulants,
)
from .errors import (
    ConsistencyError,
    DomainError,
    IntegrationError,
    SpinStarError,
    UnsupportedOrderError,
    ValidationError,
)
from .exact import f3, f12, limit_g, propagate_exact, propagate_limit
from .model import INFINITE, Convention, Method, ModelParams, Trajectory
from .polynomial import PolynomialInN
from .solvers import SolverSpec, born_markov_diagnostic, nz_solve, solve, taylor_of_solution, tcl_solve
from .special import dawson
from .spectrum import BathSpectrum, bath_spectrum, h, multiplicity

__version__ = "0.1.0"
