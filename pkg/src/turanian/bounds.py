"""Lower and upper estimates for the difference I_nu^2 - I_{nu-1} I_{nu+1}.

Two lower cuts come from truncating the positive-term series after one or
two terms; they are valid on all of nu > -1.  Three upper estimates exist
for integer order only: the coefficient-supremum form rho(n) * x^{2n} /
(n!(n+1)!) * 1F2(1; n+1, n+2; x^2), the sqrt-weighted series
(1/sqrt(pi)) sum_{m>=n} x^{2m}/(m!(m+1)! sqrt(m)), and the classical cap
I_n(x)^2/(n+1).  `evaluate_all` bundles everything applicable at a point
into a BoundReport with side-signed margins.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .scalar import (
    _EPS,
    MAX_TERMS,
    ConvergenceError,
    DomainError,
    hyp1f2,
    log_gamma,
    positive_series_tail,
)
from .bessel import bessel_i, check_envelope, is_integer_order
from .delta import delta_series_real, rho

__all__ = [
    "BoundEntry",
    "BoundReport",
    "lower_one_term",
    "lower_two_term",
    "upper_hypergeom",
    "upper_sqrt_series",
    "upper_classical",
    "evaluate_all",
]

_LN_PI = math.log(math.pi)


class BoundEntry(NamedTuple):
    bound_id: str
    value: float
    side: str  # "lower" | "upper"
    margin: float  # side-signed: >= 0 means the bound holds with room
    satisfied: bool


class BoundReport(NamedTuple):
    nu: float
    x: float
    delta: float
    bounds: tuple[BoundEntry, ...]


def _require_index(name: str, n, minimum: int) -> int:
    if not is_integer_order(n) or n < minimum:
        raise DomainError(f"{name} requires an integer >= {minimum}, got {n!r}")
    return int(round(n))


def _log_assembled(parts: tuple[float, ...]) -> tuple[float, float]:
    """exp of a sum of log-domain parts, with a roundoff bound.

    The relative error of the result is about the absolute error of the
    exponent, itself bounded by eps times the size of the parts summed.
    """
    lt = math.fsum(parts)
    value = math.exp(lt)
    est = _EPS * (64.0 + sum(abs(p) for p in parts)) * value
    return value, est


def _one_term(nu: float, x: float) -> tuple[float, float]:
    if x == 0.0:
        if nu == 0.0:
            return 1.0, 0.0
        return (0.0, 0.0) if nu > 0.0 else (math.inf, 0.0)
    return _log_assembled((
        2.0 * nu * math.log(0.5 * abs(x)),
        -log_gamma(nu + 1.0),
        -log_gamma(nu + 2.0),
    ))


def _two_term(nu: float, x: float) -> tuple[float, float]:
    v1, e1 = _one_term(nu, x)
    if x == 0.0:
        return v1, e1
    v2, e2 = _log_assembled((
        math.log(2.0),
        (2.0 * nu + 2.0) * math.log(0.5 * abs(x)),
        -log_gamma(nu + 1.0),
        -log_gamma(nu + 3.0),
    ))
    value = v1 + v2
    return value, e1 + e2 + _EPS * value


def _hypergeom(n: int, x: float, tol: float) -> tuple[float, float]:
    if x == 0.0:
        return 0.0, 0.0
    pref, pref_est = _log_assembled((
        2.0 * n * math.log(abs(x)),
        -log_gamma(n + 1.0),
        -log_gamma(n + 2.0),
    ))
    r = rho(n)
    # rho is exact on the dyadic path (peak index <= 500, i.e. n <= 15)
    r_est = 0.0 if 2 * n * n - 1 <= 500 else 1e-12 * r
    h = hyp1f2(n + 1.0, n + 2.0, x * x, tol)
    value = r * pref * h.value
    est = (r * pref * h.abs_error_est
           + r * pref_est * abs(h.value)
           + r_est * pref * abs(h.value)
           + 2.0 * _EPS * abs(value))
    return value, est


def _sqrt_series(n: int, x: float, tol: float) -> tuple[float, float]:
    if x == 0.0:
        return 0.0, 0.0
    term, lead_est = _log_assembled((
        2.0 * n * math.log(abs(x)),
        -log_gamma(n + 1.0),
        -log_gamma(n + 2.0),
        -0.5 * math.log(float(n)),
        -0.5 * _LN_PI,
    ))
    lead_rel = lead_est / term if term > 0.0 else 0.0
    total = term
    x2 = x * x
    m = n
    while m - n < MAX_TERMS:
        ratio = x2 / ((m + 1.0) * (m + 2.0)) * math.sqrt(m / (m + 1.0))
        nxt = term * ratio
        if nxt <= tol * total and nxt <= term:
            est = (positive_series_tail(nxt, term)
                   + (m - n + 2.0) * _EPS * total
                   + lead_rel * total)
            return total, est
        total += nxt
        term = nxt
        m += 1
    raise ConvergenceError(
        f"sqrt-weighted series did not settle for n={n}, x={x}")


def _classical(n: int, x: float, tol: float) -> tuple[float, float]:
    res = bessel_i(float(n), x, tol)
    scale = 1.0 / (n + 1.0)
    value = res.value * res.value * scale
    est = ((2.0 * abs(res.value) * res.abs_error_est
            + res.abs_error_est * res.abs_error_est) * scale
           + 2.0 * _EPS * abs(value))
    return value, est


def lower_one_term(nu: float, x: float) -> float:
    """First term of the positive series: (x^2/4)^nu / (Gamma(nu+1) Gamma(nu+2)).

    A lower cut for the difference on all of nu > -1; at x = 0 with nu < 0
    the limit is +inf, matching the difference itself.
    """
    check_envelope(nu, x)
    return _one_term(nu, x)[0]


def lower_two_term(nu: float, x: float) -> float:
    """First two series terms; always between lower_one_term and the difference."""
    check_envelope(nu, x)
    return _two_term(nu, x)[0]


def upper_hypergeom(n, x: float, tol: float = 1e-12) -> float:
    """Coefficient-supremum cap rho(n) x^{2n}/(n!(n+1)!) 1F2(1; n+1, n+2; x^2).

    Valid for integer n >= 1: every series coefficient T_n(m) is at most
    rho(n), so replacing all of them by the peak value bounds the sum.
    """
    n = _require_index("upper_hypergeom", n, 1)
    check_envelope(float(n), x)
    return _hypergeom(n, x, tol)[0]


def upper_sqrt_series(n, x: float, tol: float) -> float:
    """Series cap (1/sqrt(pi)) sum_{m>=n} x^{2m}/(m!(m+1)! sqrt(m)), n >= 1.

    Termwise domination: T_n(m) <= 1/sqrt(pi m) for every m >= n >= 1.
    """
    n = _require_index("upper_sqrt_series", n, 1)
    if tol <= 0.0:
        raise DomainError("upper_sqrt_series requires tol > 0")
    check_envelope(float(n), x)
    return _sqrt_series(n, x, tol)[0]


def upper_classical(n, x: float, tol: float = 1e-12) -> float:
    """The cap I_n(x)^2 / (n+1), valid for integer n >= 0."""
    n = _require_index("upper_classical", n, 0)
    check_envelope(float(n), x)
    return _classical(n, x, tol)[0]


def evaluate_all(nu: float, x: float, tol: float) -> BoundReport:
    """Evaluate every bound applicable at (nu, x) against the series value.

    The two lower cuts always apply; the three caps only at nonnegative
    integer order (and the series caps only from n = 1).  A bound is
    `satisfied` when its side-signed margin clears -(combined error
    estimates + 4 eps |delta|): roundoff noise is not a violation.
    """
    check_envelope(nu, x)
    ref = delta_series_real(nu, x, tol)
    entries = []

    def push(bound_id: str, side: str, value: float, est: float) -> None:
        if math.isinf(value) and math.isinf(ref.value):
            margin = 0.0  # both blow up at x = 0, nu < 0: bound attained
        elif side == "lower":
            margin = ref.value - value
        else:
            margin = value - ref.value
        slack = ref.abs_error_est + est + 4.0 * _EPS * abs(ref.value)
        entries.append(BoundEntry(bound_id, value, side, margin,
                                  bool(margin >= -slack)))

    v, e = _one_term(nu, x)
    push("lower_one_term", "lower", v, e)
    v, e = _two_term(nu, x)
    push("lower_two_term", "lower", v, e)

    if is_integer_order(nu) and nu > -0.5:
        n = int(round(nu))
        if n >= 1:
            v, e = _hypergeom(n, x, tol)
            push("upper_hypergeom", "upper", v, e)
            v, e = _sqrt_series(n, x, tol)
            push("upper_sqrt_series", "upper", v, e)
        v, e = _classical(n, x, tol)
        push("upper_classical", "upper", v, e)

    return BoundReport(nu, x, ref.value, tuple(entries))
