"""Turanian of modified Bessel functions.

Evaluates D_nu(x) = I_nu(x)^2 - I_{nu-1}(x) I_{nu+1}(x) by four independent
routes, provides its lower/upper estimates and limit formulas, and certifies
every inequality and identity over parameter grids, from the library or the
`turanian` command line.
"""

from .scalar import (
    ConvergenceError,
    DomainError,
    EnvelopeError,
    EvalResult,
    EvaluationError,
    LogValue,
    PoleError,
    gamma,
    hyp1f2,
    log_binomial,
    log_gamma,
    pochhammer,
)
from .quadrature import QuadratureRule, gauss_legendre, integrate
from .bessel import (
    INTEGER_ORDER_TOL,
    NU_ENVELOPE,
    X_ENVELOPE,
    bessel_i,
    bessel_j,
    bessel_i1_over_z,
    bessel_j_zero,
    bessel_j_zeros,
    check_envelope,
    i_ratio,
    is_integer_order,
)
from .delta import (
    T0_SUPREMUM,
    delta_auto,
    delta_direct,
    delta_fourier,
    delta_neumann,
    delta_series_integer,
    delta_series_real,
    rho,
    t_coefficient,
    t_generating_integral,
)
from .bounds import (
    BoundEntry,
    BoundReport,
    evaluate_all,
    lower_one_term,
    lower_two_term,
    upper_classical,
    upper_hypergeom,
    upper_sqrt_series,
)
from .asymptotics import (
    EXPONENT_MODES,
    AsymptoticCheck,
    asymptotic_check,
    delta_large_n,
    delta_large_nu,
    t_large_m,
)
from .verify import (
    SUITE_NAMES,
    ZERO_SUM_POINTS,
    CertificationReport,
    Failure,
    GridSpec,
    certify_bounds,
    certify_cross_method,
    certify_generating_function,
    certify_j_comparison,
    certify_monotonicity,
    certify_zero_sums,
    default_grid,
    delta_j,
    run_suite,
    tightness_crossover,
)

__version__ = "0.1.0"
