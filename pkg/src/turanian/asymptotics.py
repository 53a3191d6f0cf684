"""Limit formulas for the difference and its coefficients, with diagnostics.

Three regimes: fixed x with the order n growing (the first series term
dominates), order nu large with x fixed (a saddle-style formula with a
small correction bracket), and the coefficient index m large (T_n(m)
flattens onto 1/sqrt(pi m) regardless of n).

The large-nu formula ships with two exponent conventions, `as_printed`
and `squared`, because the two disagree and only a numerical ratio table
can say which one tracks the difference; see `exponent_mode` below.
"""

from __future__ import annotations

import math
from typing import NamedTuple

from .scalar import DomainError
from .bounds import _one_term, _require_index

__all__ = [
    "AsymptoticCheck",
    "asymptotic_check",
    "delta_large_n",
    "delta_large_nu",
    "t_large_m",
    "EXPONENT_MODES",
]

EXPONENT_MODES = ("as_printed", "squared")


class AsymptoticCheck(NamedTuple):
    parameter: float
    exact: float
    approx: float
    ratio: float


def asymptotic_check(parameter: float, exact: float, approx: float) -> AsymptoticCheck:
    ratio = exact / approx if approx != 0.0 else math.inf
    return AsymptoticCheck(float(parameter), exact, approx, ratio)


def delta_large_n(n, x: float) -> float:
    """Leading behavior for growing integer order: x^{2n} / (4^n n! (n+1)!).

    Identical to the one-term lower cut; the ratio difference/formula
    decreases to 1 monotonically because every neglected term is positive.
    """
    n = _require_index("delta_large_n", n, 0)
    return _one_term(float(n), x)[0]


def _bracket(nu: float) -> float:
    # 1 - nu^{2nu+1} / ((nu-1)^{nu-1/2} (nu+1)^{nu+3/2}) computed as
    # -expm1(L): the log-domain exponent L tends to 0^- for large nu and
    # direct subtraction would lose every digit
    l = ((2.0 * nu + 1.0) * math.log(nu)
         - (nu - 0.5) * math.log(nu - 1.0)
         - (nu + 1.5) * math.log(nu + 1.0))
    return -math.expm1(l)


def delta_large_nu(nu: float, x: float, exponent_mode: str = "squared") -> float:
    """Large-order formula (1/(2 pi nu)) (e x / (2 nu))^p (1 - correction).

    `exponent_mode` selects p: "as_printed" uses p = nu, "squared" uses
    p = 2 nu as the square of the one-function limit suggests.  Both are
    exposed on purpose; the ratio tables adjudicate empirically.
    """
    if not nu > 1.0:
        raise DomainError(f"delta_large_nu requires nu > 1, got {nu!r}")
    if x == 0.0:
        raise DomainError("delta_large_nu requires x != 0")
    if exponent_mode not in EXPONENT_MODES:
        raise DomainError(
            f"exponent_mode must be one of {EXPONENT_MODES}, got {exponent_mode!r}")
    p = nu if exponent_mode == "as_printed" else 2.0 * nu
    ln_pref = (-math.log(2.0 * math.pi * nu)
               + p * (1.0 + math.log(abs(x)) - math.log(2.0 * nu)))
    return math.exp(ln_pref) * _bracket(nu)


def t_large_m(m) -> float:
    """Coefficient flattening: T_n(m) tends to 1/sqrt(pi m), n-independently."""
    m = _require_index("t_large_m", m, 1)
    return 1.0 / math.sqrt(math.pi * m)
