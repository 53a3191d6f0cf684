"""Grid certification: every inequality and identity, checked with margins.

Each `certify_*` function sweeps a grid (or a point set), compares
floating-point evaluations under explicitly stated tolerances, and returns
a CertificationReport.  A failure is data, not an exception: the report
carries the witness point, its margin, and a one-line diagnostic.  Margins
are signed so that >= 0 means "holds with room"; the worst margin over the
sweep is always reported, witness attached, even when everything passes.
"""

from __future__ import annotations

import math
import random
from typing import NamedTuple, Sequence

import numpy as np

from .scalar import _EPS, DomainError, EvalResult
from .bessel import bessel_i, bessel_j, bessel_j_zeros, i_ratio, is_integer_order
from .delta import (
    T0_SUPREMUM,
    delta_direct,
    delta_fourier,
    delta_neumann,
    delta_series_integer,
    delta_series_real,
    rho,
    t_coefficient,
    t_generating_integral,
)
from .bounds import evaluate_all, upper_classical, upper_hypergeom
from .quadrature import gauss_legendre

__all__ = [
    "GridSpec",
    "Failure",
    "CertificationReport",
    "default_grid",
    "delta_j",
    "certify_cross_method",
    "certify_bounds",
    "certify_j_comparison",
    "certify_zero_sums",
    "certify_monotonicity",
    "certify_generating_function",
    "tightness_crossover",
    "run_suite",
    "SUITE_NAMES",
    "ZERO_SUM_POINTS",
]

_ROUNDOFF = 1e-14  # comparison slack for quantities reported without estimates


class GridSpec(NamedTuple):
    """A deterministic (nu, x) product grid, optionally with seeded extras."""

    nu_values: tuple[float, ...]
    x_values: tuple[float, ...]
    random_count: int = 0
    seed: int = 0
    x_range: tuple[float, float] = (0.1, 20.0)
    nu_range: tuple[float, float] | None = None

    def axes(self) -> tuple[list[float], list[float]]:
        nus = list(self.nu_values)
        xs = list(self.x_values)
        if self.random_count > 0:
            rng = random.Random(self.seed)
            if self.nu_range is not None:
                lo, hi = self.nu_range
                nus += [rng.uniform(lo, hi) for _ in range(self.random_count)]
            lo, hi = self.x_range
            xs += [rng.uniform(lo, hi) for _ in range(self.random_count)]
        for nu in nus:
            if not nu > -1.0:
                raise DomainError(f"grid order {nu!r} outside nu > -1")
        return nus, xs

    def points(self) -> list[tuple[float, float]]:
        nus, xs = self.axes()
        return [(nu, x) for nu in nus for x in xs]


class Failure(NamedTuple):
    nu: float
    x: float
    margin: float
    diagnostics: str


class CertificationReport(NamedTuple):
    property_id: str
    points: int
    failures: tuple[Failure, ...]
    worst_margin: float
    worst_witness: tuple[float, float]
    tolerance: str


_DEFAULT_NU = (-0.9, -0.75, -0.5, -0.25, 0.0, 0.5, 1.0, 1.5, 2.0, 3.0,
               4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0, 12.0, 20.0)
_DEFAULT_X = (0.1, 0.25, 0.5, 1.0, 2.0, 3.0, 5.0, 8.0, 10.0, 15.0, 20.0)


def default_grid(seed: int = 0) -> GridSpec:
    """Orders covering every precondition boundary, arguments to x = 20,
    plus 50 seeded-random arguments."""
    return GridSpec(_DEFAULT_NU, _DEFAULT_X, random_count=50, seed=seed)


class _Collector:
    """Accumulates margins; positive margin = holds with that much room."""

    def __init__(self) -> None:
        self.count = 0
        self.failures: list[Failure] = []
        self.worst = math.inf
        self.witness = (math.nan, math.nan)

    def check(self, nu: float, x: float, margin: float, diag: str,
              ok: bool | None = None) -> None:
        self.count += 1
        if margin < self.worst:
            self.worst = margin
            self.witness = (nu, x)
        passed = (margin >= 0.0) if ok is None else ok
        if not passed:  # NaN margins land here too
            self.failures.append(Failure(nu, x, margin, diag))

    def report(self, property_id: str, tolerance: str) -> CertificationReport:
        return CertificationReport(property_id, self.count,
                                   tuple(self.failures), self.worst,
                                   self.witness, tolerance)


def delta_j(nu: float, x: float, tol: float) -> EvalResult:
    """J_nu^2 - J_{nu-1} J_{nu+1} by direct evaluation, with propagated error."""
    mid = bessel_j(nu, x, tol)
    lo = bessel_j(nu - 1.0, x, tol)
    hi = bessel_j(nu + 1.0, x, tol)
    value = mid.value * mid.value - lo.value * hi.value
    err = (2.0 * abs(mid.value) * mid.abs_error_est
           + abs(lo.value) * hi.abs_error_est
           + abs(hi.value) * lo.abs_error_est
           + mid.abs_error_est ** 2 + lo.abs_error_est * hi.abs_error_est
           + _EPS * (mid.value ** 2 + abs(lo.value * hi.value)))
    work = mid.work + lo.work + hi.work
    return EvalResult(value, err, "j_direct", work, mid.flags)


def certify_cross_method(grid: GridSpec, tol: float, order: int = 64) -> CertificationReport:
    """All representations of the difference agree pairwise at every point.

    Integer orders get all four routes (the oscillatory route only for
    x != 0); non-integer orders get series vs direct, plus the product
    quadrature when nu > -1/2.  Disagreement beyond summed error estimates
    plus tol is a failure.
    """
    rule = gauss_legendre(order)
    col = _Collector()
    for nu, x in grid.points():
        results = [delta_series_real(nu, x, tol), delta_direct(nu, x, tol)]
        if is_integer_order(nu):
            n = int(round(nu))
            results.append(delta_series_integer(n, x, tol))
            if x != 0.0:
                results.append(delta_fourier(n, x, rule))
        elif nu > -0.5 and x != 0.0:
            results.append(delta_neumann(nu, x, rule))
        for i in range(len(results)):
            for j in range(i + 1, len(results)):
                a, b = results[i], results[j]
                allowed = a.abs_error_est + b.abs_error_est + tol
                margin = allowed - abs(a.value - b.value)
                col.check(nu, x, margin,
                          f"{a.method} vs {b.method} beyond estimates")
    return col.report("cross_method", f"summed error estimates + {tol!r}")


def certify_bounds(grid: GridSpec, tol: float) -> CertificationReport:
    """Every applicable lower/upper estimate holds at every grid point."""
    col = _Collector()
    for nu, x in grid.points():
        report = evaluate_all(nu, x, tol)
        for entry in report.bounds:
            # satisfied already folds in the estimate slack; raw margins may
            # legitimately dip a hair below zero at near-equality points
            col.check(nu, x, entry.margin, f"{entry.bound_id} violated",
                      ok=entry.satisfied)
    return col.report("bounds",
                      "margin >= -(error estimates + 4 eps |delta|)")


def certify_j_comparison(grid: GridSpec, tol: float) -> CertificationReport:
    """The oscillatory difference sits below the monotone one (integer
    order), and above its I-scaled copy (any order), in the region where
    the J series keeps full digits (x <= nu + 20).
    """
    col = _Collector()
    for nu, x in grid.points():
        if not 0.0 < x <= nu + 20.0:
            continue
        dj = delta_j(nu, x, tol)
        di = delta_direct(nu, x, tol)
        if is_integer_order(nu):
            allowed = dj.abs_error_est + di.abs_error_est + tol
            margin = (di.value - dj.value) + allowed
            col.check(nu, x, margin, "J-difference not below I-difference")
        jv = bessel_j(nu, x, tol)
        iv = bessel_i(nu, x, tol)
        if abs(jv.value) <= tol:
            # ratio side collapses: the claim degenerates to nonnegativity
            col.check(nu, x, dj.value + dj.abs_error_est + tol,
                      "J-difference negative at a J zero")
            continue
        scale = (jv.value / iv.value) ** 2
        scale_est = scale * 2.0 * (jv.abs_error_est / abs(jv.value)
                                   + iv.abs_error_est / iv.value)
        rhs = scale * di.value
        rhs_est = scale * di.abs_error_est + abs(di.value) * scale_est
        allowed = dj.abs_error_est + rhs_est + tol
        margin = (dj.value - rhs) + allowed
        col.check(nu, x, margin, "ratio comparison failed")
    return col.report("j_comparison", f"summed error estimates + {tol!r}")


ZERO_SUM_POINTS = ((0.0, 1.0), (0.5, 2.0), (1.0, 3.0))


def certify_zero_sums(nu: float, x: float, zero_count: int) -> CertificationReport:
    """Both eigenvalue-sum identities at one point, tail bounds included.

    The monotone identity sums j_k^2/(x^2+j_k^2)^2 against the scaled
    difference; the oscillatory one replaces + with -.  Partial sums over
    k <= zero_count are compared under the tail bound
    sum_{k>N} 1/j_k^2 <= 1/(pi^2 (N + nu/2 - 1/4)), inflated for the
    oscillatory case by the (1 - x^2/j_{N+1}^2)^{-2} denominator floor.
    """
    if x == 0.0:
        raise DomainError("zero-sum identities need x != 0")
    if not 1 <= zero_count <= 1000:
        raise DomainError("zero_count must be in 1..1000")
    tol = 1e-12
    used = bessel_j_zeros(nu, zero_count)
    if float(np.min(np.abs(abs(x) - used))) < 1e-6:
        raise DomainError(
            "x sits within 1e-6 of a zero; the oscillatory identity degenerates")

    tail = 1.0 / (math.pi ** 2 * (zero_count + 0.5 * nu - 0.25))
    col = _Collector()

    iv = bessel_i(nu, x, tol)
    di = delta_direct(nu, x, tol)
    lhs = di.value / (4.0 * iv.value ** 2)
    lhs_est = (di.abs_error_est
               + 2.0 * abs(di.value) * iv.abs_error_est / iv.value) \
        / (4.0 * iv.value ** 2)
    partial = float(np.sum(used ** 2 / (x * x + used ** 2) ** 2))
    allowed = tail + lhs_est + _ROUNDOFF * abs(lhs)
    col.check(nu, x, allowed - abs(lhs - partial),
              "monotone zero-sum identity beyond tail bound")

    jv = bessel_j(nu, x, tol)
    dj = delta_j(nu, x, tol)
    lhs_j = dj.value / (4.0 * jv.value ** 2)
    lhs_j_est = (dj.abs_error_est
                 + 2.0 * abs(dj.value) * jv.abs_error_est / abs(jv.value)) \
        / (4.0 * jv.value ** 2)
    partial_j = float(np.sum(used ** 2 / (x * x - used ** 2) ** 2))
    # every omitted zero exceeds the last used one, so inflating the tail by
    # that denominator floor keeps the bound valid without an extra zero
    inflate = 1.0 / (1.0 - x * x / float(used[-1]) ** 2) ** 2
    allowed_j = tail * inflate + lhs_j_est + _ROUNDOFF * abs(lhs_j)
    col.check(nu, x, allowed_j - abs(lhs_j - partial_j),
              "oscillatory zero-sum identity beyond tail bound")

    return col.report("zero_sums",
                      f"McMahon tail bound over {zero_count} zeros + estimates")


def certify_monotonicity(grid: GridSpec, step: float) -> CertificationReport:
    """Order-monotonicity of the difference and argument-monotonicity of
    the Bessel ratio.

    The difference check runs on the grid's nonnegative orders
    (decreasing under nu -> nu + step); the ratio check compares adjacent
    grid arguments for every order >= -1/2, under a fixed roundoff slack
    because the ratio saturates to 1 at machine precision.
    """
    if not step > 0.0:
        raise DomainError("certify_monotonicity requires step > 0")
    tol = 1e-12
    nus, xs = grid.axes()
    if any(nu < -0.5 for nu in nus):
        raise DomainError("monotonicity grid requires nu >= -1/2 throughout")
    xs = sorted(set(xs))
    col = _Collector()
    for nu in nus:
        if nu < 0.0:
            continue
        for x in xs:
            here = delta_series_real(nu, x, tol)
            there = delta_series_real(nu + step, x, tol)
            allowed = here.abs_error_est + there.abs_error_est
            col.check(nu, x, (here.value - there.value) + allowed,
                      f"difference increased from order {nu} to {nu + step}")
    for nu in nus:
        prev = None
        for x in xs:
            if x <= 0.0:
                continue
            cur = i_ratio(nu, x)
            if prev is not None:
                slack = _ROUNDOFF * max(1.0, abs(prev))
                col.check(nu, x, (cur - prev) + slack,
                          "bessel ratio not increasing in the argument")
            prev = cur
    return col.report("monotonicity",
                      f"error estimates (difference) / {_ROUNDOFF} slack (ratio)")


def certify_generating_function(n_max: int, x_values: Sequence[float],
                                m_cut: int, order: int = 64) -> CertificationReport:
    """Coefficient-series consistency: the integral form of the generating
    function matches the truncated power sum within the geometric tail
    sup_m T_n(m) |x|^{m_cut+1} / (1 - |x|) plus an order-halving
    quadrature-difference allowance.
    """
    if n_max < 0 or m_cut < 0:
        raise DomainError("n_max and m_cut must be nonnegative")
    rule = gauss_legendre(order)
    half_rule = gauss_legendre(max(2, order // 2))
    col = _Collector()
    for n in range(n_max + 1):
        sup = T0_SUPREMUM if n == 0 else rho(n)
        coeffs = [t_coefficient(n, m) for m in range(m_cut + 1)]
        for x in x_values:
            if not abs(x) < 1.0:
                raise DomainError(f"generating function needs |x| < 1, got {x!r}")
            full = t_generating_integral(n, x, rule)
            half = t_generating_integral(n, x, half_rule)
            partial = math.fsum(c * x ** m for m, c in enumerate(coeffs))
            tail = sup * abs(x) ** (m_cut + 1) / (1.0 - abs(x))
            # 1e-11 absolute floor: the order-halving difference vanishes to
            # machine level on these entire integrands, leaving only
            # accumulated node roundoff on both sides of the comparison
            allowed = tail + abs(full - half) + 1e-11
            col.check(float(n), x, allowed - abs(full - partial),
                      "integral vs truncated sum beyond geometric tail")
    return col.report("generating_function",
                      f"geometric tail (m_cut={m_cut}) + quadrature allowance")


def tightness_crossover(n: int, x_values: Sequence[float],
                        tol: float = 1e-12) -> float | None:
    """Smallest grid argument where the coefficient-supremum cap beats the
    classical cap, or None if it never does on the grid."""
    for x in sorted(x_values):
        if x <= 0.0:
            continue
        if upper_hypergeom(n, x, tol) < upper_classical(n, x, tol):
            return x
    return None


SUITE_NAMES = ("cross", "bounds", "jcomp", "zeros", "mono", "genfun")


def run_suite(names: Sequence[str], grid: GridSpec, tol: float,
              order: int = 64) -> list[CertificationReport]:
    """Run the named certifications on one grid, reports in a fixed order."""
    for name in names:
        if name not in SUITE_NAMES:
            raise DomainError(f"unknown suite {name!r}; pick from {SUITE_NAMES}")
    reports = []
    if "cross" in names:
        reports.append(certify_cross_method(grid, tol, order))
    if "bounds" in names:
        reports.append(certify_bounds(grid, tol))
    if "jcomp" in names:
        reports.append(certify_j_comparison(grid, tol))
    if "zeros" in names:
        for nu, x in ZERO_SUM_POINTS:
            reports.append(certify_zero_sums(nu, x, 500))
    if "mono" in names:
        nus, _ = grid.axes()
        mono = GridSpec(tuple(nu for nu in nus if nu >= -0.5),
                        grid.x_values, grid.random_count, grid.seed,
                        grid.x_range, None)
        reports.append(certify_monotonicity(mono, 0.25))
    if "genfun" in names:
        reports.append(certify_generating_function(
            5, (-0.9, -0.5, 0.5, 0.9), 200, order))
    return reports
