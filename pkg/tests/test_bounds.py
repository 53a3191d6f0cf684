import math

import mpmath as mp
import pytest
from scipy import special

from turanian.scalar import DomainError, EnvelopeError
from turanian.delta import delta_series_integer, delta_series_real, t_coefficient
from turanian.bounds import (
    evaluate_all,
    lower_one_term,
    lower_two_term,
    upper_classical,
    upper_hypergeom,
    upper_sqrt_series,
)

mp.mp.dps = 40


def mp_delta(nu, x):
    nu, x = mp.mpf(nu), mp.mpf(x)
    return float(mp.besseli(nu, x) ** 2
                 - mp.besseli(nu - 1, x) * mp.besseli(nu + 1, x))


# ---- lower cuts -------------------------------------------------------------

def test_one_term_at_order_zero_is_one():
    for x in (0.0, 0.5, 3.0, -7.0, 50.0):
        assert lower_one_term(0.0, x) == pytest.approx(1.0, rel=1e-14)


@pytest.mark.parametrize("n", [0, 1, 2, 5, 9])
def test_one_term_integer_form(n):
    x = 1.7
    ref = x ** (2 * n) / (4 ** n * math.factorial(n) * math.factorial(n + 1))
    assert lower_one_term(float(n), x) == pytest.approx(ref, rel=1e-13)


def test_one_term_zero_argument_limits():
    assert lower_one_term(2.0, 0.0) == 0.0
    assert lower_one_term(-0.5, 0.0) == math.inf


def test_one_term_strictly_below_delta():
    assert lower_one_term(1.5, 2.0) < delta_series_real(1.5, 2.0, 1e-13).value


@pytest.mark.parametrize("n", [0, 1, 4])
def test_two_term_integer_form(n):
    x = 2.2
    first = x ** (2 * n) / (4 ** n * math.factorial(n) * math.factorial(n + 1))
    second = x ** (2 * n + 2) / (2 ** (2 * n + 1)
                                 * math.factorial(n) * math.factorial(n + 2))
    assert lower_two_term(float(n), x) == pytest.approx(first + second, rel=1e-13)


def test_two_term_sandwich_at_noninteger_order():
    nu, x = 0.7, 3.0
    one = lower_one_term(nu, x)
    two = lower_two_term(nu, x)
    delta = delta_series_real(nu, x, 1e-14).value
    assert one < two < delta


@pytest.mark.parametrize("nu", [-0.9, -0.5, -0.1, 0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0])
@pytest.mark.parametrize("x", [0.1, 1.0, 5.0, 20.0])
def test_lower_cuts_hold_on_grid(nu, x):
    one = lower_one_term(nu, x)
    two = lower_two_term(nu, x)
    delta = delta_series_real(nu, x, 1e-13).value
    assert one <= two <= delta * (1.0 + 1e-13)


def test_lower_cuts_envelope():
    with pytest.raises(EnvelopeError):
        lower_one_term(-1.0, 1.0)
    with pytest.raises(EnvelopeError):
        lower_two_term(61.0, 1.0)


# ---- hypergeometric cap -----------------------------------------------------

def test_hypergeom_zero_argument():
    assert upper_hypergeom(1, 0.0) == 0.0


def test_hypergeom_closed_form_oracle():
    # rho(1) x^2 / (1! 2!) * 1F2(1; 2, 3; x^2) at x = 2
    ref = float(mp.mpf("0.25") * 4 / 2 * mp.hyp1f2(1, 2, 3, 4))
    assert upper_hypergeom(1, 2.0) == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("n,x", [(1, 2.0), (1, 0.3), (3, 5.0), (10, 1.0)])
def test_hypergeom_dominates_series(n, x):
    assert upper_hypergeom(n, x) >= delta_series_integer(n, x, 1e-13).value


def test_hypergeom_domain():
    with pytest.raises(DomainError):
        upper_hypergeom(0, 1.0)
    with pytest.raises(DomainError):
        upper_hypergeom(1.5, 1.0)


# ---- sqrt-weighted cap --------------------------------------------------------

def test_sqrt_series_zero_argument():
    assert upper_sqrt_series(1, 0.0, 1e-12) == 0.0


def test_sqrt_series_direct_sum_oracle():
    n, x = 1, 2.5
    ref = float(sum(mp.mpf(x) ** (2 * m)
                    / (mp.factorial(m) * mp.factorial(m + 1) * mp.sqrt(m))
                    for m in range(n, 300)) / mp.sqrt(mp.pi))
    assert upper_sqrt_series(n, x, 1e-14) == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("n,x", [(1, 1.0), (2, 4.0), (5, 10.0)])
def test_sqrt_series_dominates_series(n, x):
    assert upper_sqrt_series(n, x, 1e-13) >= delta_series_integer(n, x, 1e-13).value


def test_sqrt_series_termwise_domination():
    # mechanism: each coefficient sits below the flat 1/sqrt(pi m) profile
    for n in range(1, 6):
        for m in range(n, 2001):
            assert t_coefficient(n, m) <= 1.0 / math.sqrt(math.pi * m)


def test_sqrt_series_domain():
    with pytest.raises(DomainError):
        upper_sqrt_series(0, 1.0, 1e-12)
    with pytest.raises(DomainError):
        upper_sqrt_series(1, 1.0, 0.0)


# ---- classical cap -------------------------------------------------------------

def test_classical_at_origin_attains_delta():
    assert upper_classical(0, 0.0) == 1.0


def test_classical_matches_reference_library():
    for n, x in [(0, 1.0), (2, 1.0), (7, 12.0)]:
        ref = float(special.iv(n, x)) ** 2 / (n + 1)
        assert upper_classical(n, x) == pytest.approx(ref, rel=1e-11)


def test_classical_dominates_series():
    assert upper_classical(2, 1.0) >= delta_series_integer(2, 1.0, 1e-13).value


def test_classical_domain():
    with pytest.raises(DomainError):
        upper_classical(-1, 1.0)


@pytest.mark.parametrize("n", [1, 3, 10])
@pytest.mark.parametrize("x", [0.1, 1.0, 5.0, 20.0])
def test_all_caps_dominate_on_grid(n, x):
    delta = delta_series_integer(n, x, 1e-13).value
    cap = min(upper_hypergeom(n, x),
              upper_sqrt_series(n, x, 1e-13),
              upper_classical(n, x))
    assert delta <= cap * (1.0 + 1e-13)


# ---- report assembly -----------------------------------------------------------

def test_report_full_set_at_integer_order():
    report = evaluate_all(1.0, 2.0, 1e-12)
    ids = [b.bound_id for b in report.bounds]
    assert ids == ["lower_one_term", "lower_two_term", "upper_hypergeom",
                   "upper_sqrt_series", "upper_classical"]
    assert all(b.satisfied for b in report.bounds)
    assert all(b.margin >= 0.0 for b in report.bounds)
    assert report.delta == pytest.approx(mp_delta(1, 2), rel=1e-13)


def test_report_lower_only_at_real_order():
    report = evaluate_all(0.5, 1.0, 1e-12)
    assert [b.bound_id for b in report.bounds] == ["lower_one_term",
                                                   "lower_two_term"]
    assert all(b.satisfied for b in report.bounds)


def test_report_order_zero_gets_classical_cap_only():
    report = evaluate_all(0.0, 1.0, 1e-12)
    ids = [b.bound_id for b in report.bounds]
    assert ids == ["lower_one_term", "lower_two_term", "upper_classical"]


def test_report_margins_finite_at_3_10():
    report = evaluate_all(3.0, 10.0, 1e-12)
    assert all(math.isfinite(b.margin) for b in report.bounds)
    assert all(b.satisfied for b in report.bounds)


def test_report_sides():
    report = evaluate_all(2.0, 3.0, 1e-12)
    sides = {b.bound_id: b.side for b in report.bounds}
    assert sides["lower_one_term"] == sides["lower_two_term"] == "lower"
    assert sides["upper_hypergeom"] == sides["upper_classical"] == "upper"
    for b in report.bounds:
        expected = (report.delta - b.value if b.side == "lower"
                    else b.value - report.delta)
        assert b.margin == expected


def test_report_zero_argument_equality_points():
    # x = 0: both sides of the one-term cut coincide (0 for nu > 0, 1 at 0)
    for nu in (0.0, 1.0, 2.5):
        report = evaluate_all(nu, 0.0, 1e-12)
        one = report.bounds[0]
        assert one.margin == 0.0 and one.satisfied
    report = evaluate_all(-0.3, 0.0, 1e-12)
    assert report.bounds[0].margin == 0.0 and report.bounds[0].satisfied
