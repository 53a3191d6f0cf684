"""Four routes to the Turanian difference D_nu(x) = I_nu^2 - I_{nu-1} I_{nu+1}.

The four evaluators are algorithmically independent so they can certify one
another: a literal difference of products (``delta_direct``), a positive-term
series at integer order (``delta_series_integer``), an oscillatory Fourier
integral at integer order (``delta_fourier``), and a positive-term series /
positive-weight quadrature pair valid for real orders (``delta_series_real``,
``delta_neumann``).  The coefficient family T_n(m) = binomial(2m, m-n)/4^m,
its supremum rho_n, and its generating-function integral live here too.
"""

from __future__ import annotations

import math
import threading

import numpy as np

from .bessel import (
    _i1_over_z_array,
    bessel_i,
    check_envelope,
    is_integer_order,
)
from .quadrature import QuadratureRule, gauss_legendre, integrate
from .scalar import (
    MAX_TERMS,
    ConvergenceError,
    DomainError,
    EvalResult,
    log_binomial,
    log_gamma,
    positive_series_tail,
)

_EPS = 2.220446049250313e-16
_LN2 = math.log(2.0)

# sup over m >= 0 of t_coefficient(0, m): the n = 0 sequence is decreasing
# from T_0(0) = 1, so the supremum sits at the front rather than at 2n^2 - 1.
# Kept separate from rho(), which covers n >= 1 only.
T0_SUPREMUM = 1.0

# exact-integer arithmetic stays in double range up to here; beyond it the
# binomial overflows a float and the log route takes over
_T_EXACT_MAX_M = 500


def _require_count(name: str, n) -> int:
    """Validate an integer-valued argument (int or integral float)."""
    if isinstance(n, float):
        if not is_integer_order(n):
            raise DomainError(f"{name} must be an integer, got {n}")
        n = round(n)
    return int(n)


def _zero_argument_result(nu: float, method: str) -> EvalResult:
    """Common x = 0 limits: 1 at nu = 0, 0 for nu > 0, +inf below."""
    if nu == 0.0:
        return EvalResult(1.0, 0.0, method, 1)
    if nu > 0.0:
        return EvalResult(0.0, 0.0, method, 1)
    return EvalResult(math.inf, 0.0, method, 1, ("infinite",))


# ---- the four evaluators -------------------------------------------------------

def delta_direct(nu: float, x: float, tol: float) -> EvalResult:
    """The literal difference I_nu(x)^2 - I_{nu-1}(x) I_{nu+1}(x).

    The error estimate carries an explicit eps*(I_nu^2 + |I_{nu-1} I_{nu+1}|)
    cancellation term: when the difference is far below the products, the
    estimate honestly reports that most digits are gone.
    """
    check_envelope(nu, x)
    if x == 0.0:
        return _zero_argument_result(nu, "direct")
    ax = abs(x)
    mid = bessel_i(nu, ax, tol)
    lo = bessel_i(nu - 1.0, ax, tol)
    hi = bessel_i(nu + 1.0, ax, tol)
    a, b, c = mid.value, lo.value, hi.value
    value = a * a - b * c
    err = (2.0 * abs(a) * mid.abs_error_est
           + abs(b) * hi.abs_error_est + abs(c) * lo.abs_error_est
           + mid.abs_error_est ** 2 + lo.abs_error_est * hi.abs_error_est
           + _EPS * (a * a + abs(b * c)))
    return EvalResult(value, err, "direct", mid.work + lo.work + hi.work)


def delta_series_integer(n, x: float, tol: float) -> EvalResult:
    """Positive-term series sum_{m>=n} T_n(m) x^{2m} / (m! (m+1)!).

    Starts at the first nonvanishing coefficient, t_n = x^{2n}/(4^n n!(n+1)!),
    and walks the term ratio
    x^2 (2m+1)(2m+2) / (4 (m+1)(m+2)(m+n+1)(m-n+1)).
    """
    n = _require_count("delta_series_integer order", n)
    if n < 0:
        raise DomainError(f"delta_series_integer requires n >= 0, got {n}")
    if tol <= 0.0:
        raise DomainError("delta_series_integer requires tol > 0")
    check_envelope(float(n), x)
    if x == 0.0:
        return _zero_argument_result(float(n), "series_integer")
    q = x * x
    lt = n * math.log(0.25 * q) - log_gamma(n + 1.0) - log_gamma(n + 2.0)
    term = math.exp(lt)
    flags = ("underflow",) if term == 0.0 else ()
    total = term
    m = n
    while m - n < MAX_TERMS:
        nxt = (term * q * (2 * m + 1.0) * (2 * m + 2.0)
               / (4.0 * (m + 1.0) * (m + 2.0) * (m + n + 1.0) * (m - n + 1.0)))
        if nxt <= tol * total and nxt <= term:
            err = positive_series_tail(nxt, term) + (m - n + 2.0) * _EPS * total
            return EvalResult(total, err, "series_integer", m - n + 1, flags)
        total += nxt
        term = nxt
        m += 1
    raise ConvergenceError(
        f"delta_series_integer({n}, {x}) exceeded {MAX_TERMS} terms")


def delta_series_real(nu: float, x: float, tol: float) -> EvalResult:
    """Positive-term series for real order nu > -1.

    Cauchy-product form: sum_m (2nu+m+1)_m / m! * (x/2)^{2nu+2m}
    / (Gamma(nu+m+1) Gamma(nu+m+2)).  The term ratio is assembled so the
    factor pair (2nu+1)/(2nu+1) at m = 0 cancels symbolically, keeping the
    recurrence pole-free across nu = -1/2 and all of nu > -1.
    """
    if tol <= 0.0:
        raise DomainError("delta_series_real requires tol > 0")
    check_envelope(nu, x)
    if x == 0.0:
        return _zero_argument_result(nu, "series_real")
    half = 0.5 * abs(x)
    lt = (2.0 * nu * math.log(half)
          - log_gamma(nu + 1.0) - log_gamma(nu + 2.0))
    term = math.exp(lt)
    flags = ("underflow",) if term == 0.0 else ()
    total = term
    h2 = half * half
    m = 0
    while m < MAX_TERMS:
        ratio = 2.0 * h2 / ((m + 1.0) * (nu + m + 2.0))
        if m > 0:
            ratio *= (2.0 * nu + 2.0 * m + 1.0) / (2.0 * nu + m + 1.0)
        nxt = term * ratio
        if nxt <= tol * total and nxt <= term:
            err = positive_series_tail(nxt, term) + (m + 2.0) * _EPS * total
            return EvalResult(total, err, "series_real", m + 1, flags)
        total += nxt
        term = nxt
        m += 1
    raise ConvergenceError(
        f"delta_series_real({nu}, {x}) exceeded {MAX_TERMS} terms")


def delta_fourier(n, x: float, rule: QuadratureRule) -> EvalResult:
    """Oscillatory integral ((-1)^n 2/pi) Int_{-pi/2}^{pi/2} g(2x sin t) cos(2nt) dt.

    g is the entire continuation of I_1(u)/u, so the integrand is smooth at
    t = 0 and even in x.
    """
    n = _require_count("delta_fourier order", n)
    if n < 0:
        raise DomainError(f"delta_fourier requires n >= 0, got {n}")
    if x == 0.0:
        raise DomainError(
            "delta_fourier requires x != 0; the series forms own the limit")
    check_envelope(float(n), x)

    def integrand(t: np.ndarray) -> np.ndarray:
        return _i1_over_z_array(2.0 * x * np.sin(t)) * np.cos(2.0 * n * t)

    res = integrate(integrand, -0.5 * math.pi, 0.5 * math.pi, rule)
    sign = -1.0 if n % 2 else 1.0
    scale = 2.0 / math.pi
    value = sign * scale * res.value
    err = scale * res.abs_error_est + _EPS * abs(value)
    return EvalResult(value, err, "fourier", res.work)


# Gauss-Jacobi tables for the positive-weight integral route; keyed by the
# quadrature order and the order-dependent endpoint exponent.
_jacobi_cache: dict = {}
_jacobi_lock = threading.Lock()


def _gauss_jacobi(order: int, alpha: float, beta: float):
    """Nodes/weights for weight (1-t)^alpha (1+t)^beta on [-1, 1].

    Golub-Welsch: eigenvalues of the symmetrized monic-recurrence tridiagonal
    matrix are the nodes; the weights are mu0 times the squared first
    eigenvector components.
    """
    key = (order, alpha, beta)
    with _jacobi_lock:
        hit = _jacobi_cache.get(key)
    if hit is not None:
        return hit
    if order < 2:
        raise DomainError("gauss-jacobi needs order >= 2")
    s = alpha + beta
    a = np.empty(order)
    a[0] = (beta - alpha) / (s + 2.0)
    k = np.arange(1, order, dtype=float)
    a[1:] = (beta * beta - alpha * alpha) / ((2 * k + s) * (2 * k + s + 2.0))
    b = np.empty(order - 1)
    b[0] = 4.0 * (1 + alpha) * (1 + beta) / ((2 + s) ** 2 * (3 + s))
    k2 = np.arange(2, order, dtype=float)
    b[1:] = (4.0 * k2 * (k2 + alpha) * (k2 + beta) * (k2 + s)
             / ((2 * k2 + s) ** 2 * (2 * k2 + s + 1.0) * (2 * k2 + s - 1.0)))
    root_b = np.sqrt(b)
    jac = np.diag(a) + np.diag(root_b, 1) + np.diag(root_b, -1)
    nodes, vecs = np.linalg.eigh(jac)
    mu0 = 2.0 ** (s + 1.0) * math.exp(
        log_gamma(alpha + 1.0) + log_gamma(beta + 1.0) - log_gamma(s + 2.0))
    weights = mu0 * vecs[0, :] ** 2
    out = (nodes, weights)
    with _jacobi_lock:
        _jacobi_cache[key] = out
    return out


def _entire_i_factor(w: np.ndarray, two_nu: float) -> np.ndarray:
    """E(w) = sum_m w^m / (m! Gamma(m + 2nu + 1)), vectorized and entire."""
    term = np.full(w.shape, math.exp(-log_gamma(two_nu + 1.0)))
    total = term.copy()
    m = 0
    while True:
        term = term * w / ((m + 1.0) * (m + two_nu + 1.0))
        total += term
        m += 1
        if np.all(term <= _EPS * total) or m > MAX_TERMS:
            return total


def _jacobi_sum(nu: float, x2: float, order: int) -> float:
    nodes, weights = _gauss_jacobi(order, 0.5, nu - 0.5)
    vals = _entire_i_factor(x2 * 0.5 * (1.0 + nodes), 2.0 * nu)
    return float(np.dot(weights, vals))


def delta_neumann(nu: float, x: float, rule: QuadratureRule) -> EvalResult:
    """Positive-weight integral route (4/pi) Int_0^{pi/2} I_{2nu}(2x cos h) sin^2 h dh.

    Substituting u = cos^2 h and splitting I_{2nu} into x^{2nu} u^nu times an
    entire factor turns the integral into a Gauss-Jacobi form with weight
    u^{nu-1/2} (1-u)^{1/2}, absorbing the endpoint behaviour exactly for every
    nu > -1/2; the supplied rule contributes its order.  Error estimate from
    an embedded half-order evaluation.
    """
    if nu <= -0.5:
        raise DomainError(
            f"delta_neumann requires nu > -1/2 (got {nu}); "
            "delta_series_real covers the rest of nu > -1")
    check_envelope(nu, x)
    if x == 0.0:
        return _zero_argument_result(nu, "neumann")
    ax = abs(x)
    prefactor = (2.0 / math.pi) * math.exp(
        2.0 * nu * math.log(ax) - (nu + 1.0) * _LN2)
    full = _jacobi_sum(nu, ax * ax, rule.order)
    half = _jacobi_sum(nu, ax * ax, max(2, rule.order // 2))
    value = prefactor * full
    err = prefactor * abs(full - half) + _EPS * abs(value) * rule.order
    return EvalResult(value, err, "neumann", rule.order + max(2, rule.order // 2))


# ---- the coefficient family ---------------------------------------------------

def t_coefficient(n, m) -> float:
    """T_n(m) = binomial(2m, m-n) / 4^m; exactly 0 for m < n.

    Exact integer binomial scaled by a power of two up to m = 500 (half-ulp
    accuracy); log-domain beyond, where the float binomial would overflow.
    """
    n = _require_count("t_coefficient n", n)
    m = _require_count("t_coefficient m", m)
    if n < 0 or m < 0:
        raise DomainError("t_coefficient requires n, m >= 0")
    if m < n:
        return 0.0
    if m <= _T_EXACT_MAX_M:
        return math.ldexp(float(math.comb(2 * m, m - n)), -2 * m)
    return math.exp(log_binomial(2 * m, m - n).log_magnitude - 2 * m * _LN2)


def rho(n) -> float:
    """rho_n = sup_{m>=n} T_n(m), attained at m = 2n^2 - 1 (n >= 1).

    Equals binomial(4n^2-2, 2n^2-n-1) / 2^{4n^2-2}.  The n = 0 supremum is
    the separate constant T0_SUPREMUM: the argmax formula leaves its range.
    """
    n = _require_count("rho n", n)
    if n < 1:
        raise DomainError(
            "rho requires n >= 1; the n = 0 supremum is T0_SUPREMUM = 1")
    if n > 60:
        raise DomainError(f"rho supports n <= 60, got {n}")
    return t_coefficient(n, 2 * n * n - 1)


def t_generating_integral(n, x: float, rule: QuadratureRule) -> float:
    """sum_m T_n(m) x^m as ((-1)^n/pi) Int_{-pi/2}^{pi/2} cos(2nt)/(1 - x sin^2 t) dt."""
    n = _require_count("t_generating_integral n", n)
    if n < 0:
        raise DomainError(f"t_generating_integral requires n >= 0, got {n}")
    if not abs(x) < 1.0:
        raise DomainError(
            f"t_generating_integral requires |x| < 1, got {x}")

    def integrand(t: np.ndarray) -> np.ndarray:
        st = np.sin(t)
        return np.cos(2.0 * n * t) / (1.0 - x * st * st)

    res = integrate(integrand, -0.5 * math.pi, 0.5 * math.pi, rule)
    sign = -1.0 if n % 2 else 1.0
    return sign * res.value / math.pi


# ---- method selection -----------------------------------------------------------

def delta_auto(nu: float, x: float, tol: float,
               order: int = 64) -> EvalResult:
    """Pick an evaluator: series_real always works; direct only when its
    cancellation estimate stays within the requested tolerance."""
    series = delta_series_real(nu, x, tol)
    direct_ok = False
    try:
        direct = delta_direct(nu, x, tol)
        direct_ok = direct.abs_error_est <= tol * max(1.0, abs(direct.value))
    except (DomainError, ConvergenceError, OverflowError):
        direct = None
    if direct_ok and direct.abs_error_est < series.abs_error_est:
        return direct
    return series
