"""Modified Bessel I_nu, Bessel J_nu, their ratio, and positive zeros of J_nu.

Ascending series only: the supported envelope is |x| <= 100 with orders in
(-2, 61] (the Turanian layer restricts its own arguments to nu in (-1, 60]).
Zero refinement uses the McMahon expansion plus Newton steps on the
logarithmic derivative J'_nu/J_nu, so it stays accurate far beyond the
series envelope.
"""

from __future__ import annotations

import math

import numpy as np

from .scalar import (
    MAX_TERMS,
    ConvergenceError,
    DomainError,
    EnvelopeError,
    EvalResult,
    gamma,
    log_gamma,
    positive_series_tail,
)

_EPS = 2.220446049250313e-16

X_ENVELOPE = 100.0
NU_ENVELOPE = 60.0
INTEGER_ORDER_TOL = 1e-12


def is_integer_order(nu: float) -> bool:
    return abs(nu - round(nu)) < INTEGER_ORDER_TOL


def check_envelope(nu: float, x: float) -> None:
    """Turanian-level envelope: |x| <= 100, nu in (-1, 60]."""
    if abs(x) > X_ENVELOPE:
        raise EnvelopeError(f"|x| = {abs(x)} outside supported range <= 100")
    if not (-1.0 < nu <= NU_ENVELOPE):
        raise EnvelopeError(f"nu = {nu} outside supported range (-1, 60]")


def _leading_term(nu: float, x: float) -> float:
    """(x/2)^nu / Gamma(nu+1) for x > 0; sign follows Gamma for nu < -1."""
    if is_integer_order(nu):
        n = round(nu)
        return (0.5 * x) ** n / math.factorial(n)
    g = gamma(nu + 1.0)  # negative for nu in (-2, -1)
    return math.copysign(
        math.exp(nu * math.log(0.5 * x) - math.log(abs(g))), g)


def bessel_i(nu: float, x: float, tol: float) -> EvalResult:
    """I_nu(x) by the ascending series sum_m (x/2)^(2m+nu) / (m! Gamma(m+nu+1)).

    Parameters
    ----------
    nu : order; > -2 non-integer, or any integer (I_{-n} = I_n).
    x : argument, |x| <= 100; negative x allowed for integer orders only.
    tol : relative truncation target for the series.

    Returns
    -------
    EvalResult with truncation + roundoff error estimate and the term count.
    """
    if tol <= 0.0:
        raise DomainError("bessel_i requires tol > 0")
    if abs(x) > X_ENVELOPE:
        raise EnvelopeError(f"|x| = {abs(x)} outside supported range <= 100")
    sign = 1.0
    if is_integer_order(nu):
        nu = abs(round(nu))  # I_{-n} = I_n
        if x < 0.0:
            sign = -1.0 if nu % 2 else 1.0
            x = -x
    else:
        if nu <= -2.0:
            raise DomainError(
                f"bessel_i requires nu > -2 for non-integer orders, got {nu}")
        if nu > NU_ENVELOPE + 1.0:
            raise EnvelopeError(f"nu = {nu} outside supported range")
        if x < 0.0:
            raise DomainError(
                "bessel_i with non-integer nu requires x >= 0")
    if x == 0.0:
        if nu == 0:
            return EvalResult(1.0, 0.0, "series_real", 1)
        if nu > 0:
            return EvalResult(0.0, 0.0, "series_real", 1)
        inf = math.copysign(math.inf, gamma(nu + 1.0))
        return EvalResult(inf, 0.0, "series_real", 1, ("infinite",))

    q = 0.25 * x * x
    term = _leading_term(nu, x)
    total = term
    abssum = abs(term)
    for m in range(MAX_TERMS):
        nxt = term * q / ((m + 1.0) * (m + nu + 1.0))
        if abs(nxt) <= tol * abs(total) and abs(nxt) <= abs(term):
            err = (positive_series_tail(abs(nxt), abs(term))
                   + (m + 2.0) * _EPS * abssum)
            return EvalResult(sign * total, err, "series_real", m + 1)
        total += nxt
        abssum += abs(nxt)
        term = nxt
    raise ConvergenceError(f"bessel_i({nu}, {x}) exceeded {MAX_TERMS} terms")


def bessel_i1_over_z(z: float) -> float:
    """The entire function I_1(z)/z continued through z = 0 (value 1/2).

    Equals sum_m (z/2)^(2m) / (2 m! (m+1)!); even in z.
    """
    u = 0.25 * z * z
    term = 0.5
    total = 0.5
    m = 0
    while True:
        term *= u / ((m + 1.0) * (m + 2.0))
        if term <= _EPS * total:
            return total
        total += term
        m += 1
        if m > MAX_TERMS:  # unreachable for |z| <= 200
            raise ConvergenceError(f"bessel_i1_over_z({z}) did not converge")


def _i1_over_z_array(z: np.ndarray) -> np.ndarray:
    """Vectorized bessel_i1_over_z for quadrature integrands."""
    u = 0.25 * z * z
    term = np.full(u.shape, 0.5)
    total = np.full(u.shape, 0.5)
    m = 0
    while True:
        term = term * u / ((m + 1.0) * (m + 2.0))
        total += term
        m += 1
        if np.max(term) <= _EPS * np.min(total) or m > MAX_TERMS:
            return total


def bessel_j(nu: float, x: float, tol: float) -> EvalResult:
    """J_nu(x) by the alternating ascending series.

    The error estimate combines the first omitted term with a roundoff floor
    eps * sum|t_m|; the "cancellation" flag marks |x| > nu + 20, where the
    alternating series sheds digits.
    """
    if tol <= 0.0:
        raise DomainError("bessel_j requires tol > 0")
    if abs(x) > X_ENVELOPE:
        raise EnvelopeError(f"|x| = {abs(x)} outside supported range <= 100")
    sign = 1.0
    if is_integer_order(nu):
        n = round(nu)
        if n < 0:  # J_{-n} = (-1)^n J_n
            n = -n
            sign *= -1.0 if n % 2 else 1.0
        if x < 0.0:
            sign *= -1.0 if n % 2 else 1.0
            x = -x
        nu = float(n)
    else:
        if nu <= -2.0:
            raise DomainError(
                f"bessel_j requires nu > -2 for non-integer orders, got {nu}")
        if x < 0.0:
            raise DomainError(
                "bessel_j with non-integer nu requires x >= 0")
    flags = ("cancellation",) if abs(x) > nu + 20.0 else ()
    if x == 0.0:
        if nu == 0:
            return EvalResult(1.0, 0.0, "series_real", 1)
        if nu > 0:
            return EvalResult(0.0, 0.0, "series_real", 1)
        inf = math.copysign(math.inf, gamma(nu + 1.0))
        return EvalResult(inf, 0.0, "series_real", 1, ("infinite",))

    q = 0.25 * x * x
    term = _leading_term(nu, x)
    total = term
    abssum = abs(term)
    for m in range(MAX_TERMS):
        nxt = -term * q / ((m + 1.0) * (m + nu + 1.0))
        if abs(nxt) <= tol * abs(total) and abs(nxt) <= abs(term):
            # alternating with shrinking terms: remainder <= first omitted
            err = abs(nxt) + (m + 2.0) * _EPS * abssum
            return EvalResult(sign * total, err, "series_real", m + 1, flags)
        total += nxt
        abssum += abs(nxt)
        term = nxt
    raise ConvergenceError(f"bessel_j({nu}, {x}) exceeded {MAX_TERMS} terms")


# ---- zeros of J_nu -----------------------------------------------------------

def _mcmahon_seeds(nu: float, ks: np.ndarray) -> np.ndarray:
    """McMahon expansion for j_{nu,k}: beta - (mu-1)/(8 beta) - ...

    Sharp for small |nu| or large k; useless for k << nu.  The series is
    asymptotic, so each correction is kept only while the terms still
    shrink (smallest-term rule) -- at k = 1 with nu near -1 the later
    corrections blow past beta itself.
    """
    beta = (ks + 0.5 * nu - 0.25) * math.pi
    mu = 4.0 * nu * nu
    e = 8.0 * beta
    c1 = (mu - 1.0) / e
    c2 = 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e ** 3)
    c3 = (32.0 * (mu - 1.0)
          * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * e ** 5))
    c4 = (64.0 * (mu - 1.0)
          * (6949.0 * mu ** 3 - 153855.0 * mu * mu + 1585743.0 * mu
             - 6277237.0) / (105.0 * e ** 7))
    m1 = np.abs(c1) < beta
    m2 = m1 & (np.abs(c2) < np.abs(c1))
    m3 = m2 & (np.abs(c3) < np.abs(c2))
    m4 = m3 & (np.abs(c4) < np.abs(c3))
    return (beta - np.where(m1, c1, 0.0) - np.where(m2, c2, 0.0)
            - np.where(m3, c3, 0.0) - np.where(m4, c4, 0.0))


def _airy_zero_magnitudes(ks: np.ndarray) -> np.ndarray:
    """|a_k| for the k-th negative zero of the Airy function Ai."""
    t = 3.0 * math.pi * (4.0 * ks - 1.0) / 8.0
    u = 1.0 / (t * t)
    return t ** (2.0 / 3.0) * (
        1.0 + u * (5.0 / 48.0 + u * (-5.0 / 36.0 + u * (77125.0 / 82944.0))))


def _turning_point_seeds(nu: float, ks: np.ndarray) -> np.ndarray:
    """Seeds j_{nu,k} ~ nu*z_k from the turning-point (Airy) approximation.

    z_k >= 1 solves sqrt(z^2-1) - arccos(1/z) = (2/3)|a_k|^{3/2}/nu; solved
    by bisection (the left side is increasing in z).  Uniformly good over
    k for nu >= 1, where McMahon's expansion breaks down at small k.
    """
    y = (2.0 / 3.0) * _airy_zero_magnitudes(ks) ** 1.5 / nu
    lo = np.full(ks.shape, 1.0 + 1e-12)
    hi = y + 0.5 * math.pi + 2.0
    for _ in range(90):
        z = 0.5 * (lo + hi)
        h = np.sqrt(z * z - 1.0) - np.arccos(1.0 / z)
        lo = np.where(h < y, z, lo)
        hi = np.where(h < y, hi, z)
    return nu * 0.5 * (lo + hi)


def _zero_seeds(nu: float, ks: np.ndarray) -> np.ndarray:
    if nu < 1.0:
        return _mcmahon_seeds(nu, ks)
    return _turning_point_seeds(nu, ks)


def _j_ratio_cf(nu: float, x: np.ndarray) -> np.ndarray:
    """J_{nu+1}(x)/J_nu(x) by continued fraction (modified Lentz), vectorized.

    Evaluates g = b_1 - 1/(b_2 - 1/(b_3 - ...)) with b_i = 2(nu+i)/x and
    returns 1/g.
    """
    tiny = 1e-290
    f = 2.0 * (nu + 1.0) / x
    f = np.where(np.abs(f) < tiny, tiny, f)
    c = f.copy()
    d = np.zeros_like(x)
    cap = int(2 * np.max(x)) + 1000
    for i in range(2, cap):
        b = 2.0 * (nu + i) / x
        d = b - d
        d = np.where(np.abs(d) < tiny, tiny, d)
        c = b - 1.0 / c
        c = np.where(np.abs(c) < tiny, tiny, c)
        d = 1.0 / d
        delta = c * d
        f = f * delta
        if np.all(np.abs(delta - 1.0) < 1e-15):
            return 1.0 / f
    raise ConvergenceError(f"continued fraction for nu={nu} did not converge")


def _refine_zeros(nu: float, seeds: np.ndarray) -> np.ndarray:
    """Newton refinement of zero seeds via the logarithmic derivative.

    Step is -J/J' = -1/(nu/x - J_{nu+1}/J_nu) with the ratio from the
    continued fraction; converged when |step| < 1e-12 * x.  Iterates are
    confined to a trust interval around each seed sized from the seed
    spacing; entries that fail to converge fall back to series bisection.
    """
    n = seeds.shape[0]
    if n > 1:
        gaps = np.diff(seeds)
        rad = 0.75 * np.minimum(np.concatenate(([gaps[0]], gaps)),
                                np.concatenate((gaps, [gaps[-1]])))
    else:
        rad = np.array([0.75 * math.pi])
    lo = np.maximum(seeds - rad, 1e-8)
    hi = seeds + rad
    x = seeds.copy()
    done = np.zeros(n, dtype=bool)
    for _ in range(60):
        ratio = _j_ratio_cf(nu, x)
        step = -1.0 / (nu / x - ratio)
        prop = x + step
        clipped = (prop < lo) | (prop > hi)
        prop = np.clip(prop, lo, hi)
        done |= (np.abs(step) < 1e-12 * x) & ~clipped
        x = np.where(done, x, prop)
        if np.all(done):
            break
    for idx in np.nonzero(~done)[0]:
        x[idx] = _bisect_zero(nu, lo[idx], hi[idx])
    if np.any(np.diff(x) <= 0.0):
        raise ConvergenceError(
            f"zero refinement lost ordering at nu={nu}")
    return x


def bessel_j_zeros(nu: float, count: int) -> np.ndarray:
    """The first `count` positive zeros of J_nu, increasing.

    McMahon seeds (nu < 1) or turning-point seeds (nu >= 1) refined by
    Newton through the continued-fraction logarithmic derivative.
    """
    if not (-1.0 < nu <= 50.0):
        raise DomainError(f"bessel_j_zeros requires nu in (-1, 50], got {nu}")
    if not (1 <= count <= 1000):
        raise DomainError("bessel_j_zeros requires 1 <= count <= 1000")
    ks = np.arange(1, count + 1, dtype=float)
    return _refine_zeros(nu, _zero_seeds(nu, ks))


def _bisect_zero(nu: float, lo: float, hi: float) -> float:
    """Series-based bisection fallback; only usable inside the envelope."""
    if hi > X_ENVELOPE:
        raise RuntimeError(
            f"zero refinement failed outside the series envelope "
            f"(nu={nu}, bracket [{lo}, {hi}])")
    f_lo = bessel_j(nu, max(lo, 1e-300), 1e-15).value
    f_hi = bessel_j(nu, hi, 1e-15).value
    if f_lo * f_hi > 0.0:
        raise RuntimeError(f"no sign change in bracket [{lo}, {hi}]")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = bessel_j(nu, mid, 1e-15).value
        if f_lo * f_mid <= 0.0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
        if hi - lo < 1e-13 * hi:
            break
    return 0.5 * (lo + hi)


def bessel_j_zero(nu: float, k: int) -> float:
    """The k-th positive zero j_{nu,k} of J_nu (k >= 1)."""
    if k < 1:
        raise DomainError(f"bessel_j_zero requires k >= 1, got {k}")
    if not (-1.0 < nu <= 50.0):
        raise DomainError(f"bessel_j_zero requires nu in (-1, 50], got {nu}")
    if k > 1000:
        raise DomainError("bessel_j_zero requires k <= 1000")
    # refine alongside the neighbours so the trust radius sees real spacing
    first = max(1, k - 1)
    ks = np.arange(first, k + 2, dtype=float)
    zeros = _refine_zeros(nu, _zero_seeds(nu, ks))
    return float(zeros[k - first])


def i_ratio(nu: float, x: float) -> float:
    """I_{nu+1}(x) / I_nu(x) for nu >= -1/2, x > 0.

    Both series share the prefactor (x/2)^nu / Gamma(nu+1), so the quotient
    of the remaining entire sums never overflows inside the envelope; the
    x -> 0 limit degenerates smoothly to the leading-term ratio
    (x/2)/(nu+1).
    """
    if nu < -0.5:
        raise DomainError(f"i_ratio requires nu >= -1/2, got {nu}")
    if not (0.0 < x <= X_ENVELOPE):
        raise DomainError(f"i_ratio requires 0 < x <= 100, got {x}")
    q = 0.25 * x * x
    u = 1.0          # terms of I_nu / prefactor
    v = 1.0 / (nu + 1.0)  # terms of I_{nu+1} / same prefactor, over (x/2)
    su, sv = u, v
    m = 0
    while True:
        u *= q / ((m + 1.0) * (nu + 1.0 + m))
        v *= q / ((m + 1.0) * (nu + 2.0 + m))
        su += u
        sv += v
        m += 1
        if u <= _EPS * su and v <= _EPS * sv:
            return 0.5 * x * sv / su
        if m > MAX_TERMS:
            raise ConvergenceError(f"i_ratio({nu}, {x}) did not converge")
