import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partition_ap.errors import DomainError
from partition_ap.specfun import (
    EULER_GAMMA,
    bernoulli_fourier,
    bernoulli_number,
    bernoulli_poly,
    bessel_I_3half,
    bessel_I_half,
    bessel_I_order_derivative_half,
    bessel_I_series,
    digamma_asymptotic,
    digamma_rational,
    euler_maclaurin_check,
    euler_maclaurin_complex_check,
    exp_integrals,
    sawtooth,
)


def test_bernoulli_numbers():
    assert bernoulli_number(0) == 1
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(2) == Fraction(1, 6)
    assert bernoulli_number(3) == 0
    assert bernoulli_number(12) == Fraction(-691, 2730)
    assert all(bernoulli_number(j) == 0 for j in range(3, 65, 2))


def test_bernoulli_polynomial_values():
    assert bernoulli_poly(1, 0.7) == pytest.approx(0.2, abs=1e-15)
    assert bernoulli_poly(2, Fraction(0)) == Fraction(1, 6)
    assert bernoulli_poly(3, 1.7, periodic=True) == pytest.approx(float(bernoulli_poly(3, Fraction(7, 10))), abs=1e-14)


def test_bernoulli_fourier_series():
    assert abs(bernoulli_fourier(2, 0.3) - float(bernoulli_poly(2, Fraction(3, 10)))) <= 1e-8


@given(ell=st.integers(0, 8), x=st.fractions(0, 1))
def test_bernoulli_reflection(ell, x):
    assert bernoulli_poly(ell, 1 - x) == (-1) ** ell * bernoulli_poly(ell, x)


def test_sawtooth_values():
    assert sawtooth(0) == 0
    assert sawtooth(Fraction(1, 4)) == Fraction(-1, 4)
    assert sawtooth(Fraction(-1, 4)) == Fraction(1, 4)
    assert sawtooth(3.0) == 0.0


@given(x=st.fractions(-20, 20), shift=st.integers(-5, 5))
def test_sawtooth_periodic_and_odd(x, shift):
    assert sawtooth(x + shift) == sawtooth(x)
    assert sawtooth(-x) == -sawtooth(x)


def test_digamma_special_values():
    assert digamma_rational(1) == pytest.approx(-EULER_GAMMA, abs=1e-15)
    assert digamma_rational(Fraction(1, 2)) == pytest.approx(-EULER_GAMMA - 2 * math.log(2), abs=1e-13)
    assert digamma_rational(Fraction(1, 3)) == pytest.approx(digamma_asymptotic(1 / 3), abs=1e-12)
    with pytest.raises(DomainError):
        digamma_rational(0)


@pytest.mark.parametrize("q", range(1, 13))
def test_gauss_digamma_against_stirling_series(q):
    for p in range(1, q + 1):
        if math.gcd(p, q) == 1:
            assert abs(digamma_rational(Fraction(p, q)) - digamma_asymptotic(p / q)) <= 1e-10


def test_bessel_elementary_forms():
    assert bessel_I_half(1.0) == pytest.approx(math.sqrt(2 / math.pi) * math.sinh(1), rel=1e-15)
    assert bessel_I_half(1.0) == pytest.approx(0.93767, abs=1e-5)
    assert abs(bessel_I_3half(50) / bessel_I_half(50) - 1) < 0.03
    for x in (0.5, 2.0, 10.0):
        assert bessel_I_half(x) == pytest.approx(bessel_I_series(0.5, x), rel=1e-12)
    for fn in (bessel_I_half, bessel_I_3half, bessel_I_order_derivative_half):
        with pytest.raises(DomainError):
            fn(0.0)


@given(x=st.floats(0.1, 30))
def test_bessel_against_power_series(x):
    assert bessel_I_half(x) == pytest.approx(bessel_I_series(0.5, x), rel=1e-12)
    assert bessel_I_3half(x) == pytest.approx(bessel_I_series(1.5, x), rel=1e-12)


def test_bessel_order_derivative():
    eps = 1e-5
    fd = (bessel_I_series(0.5 + eps, 3.0) - bessel_I_series(0.5 - eps, 3.0)) / (2 * eps)
    assert abs(bessel_I_order_derivative_half(3.0) - fd) <= 1e-6
    assert all(bessel_I_order_derivative_half(x) < 0 for x in np.linspace(0.05, 200, 300))
    x = 100.0
    scaled = -math.sqrt(2 * math.pi * x) * math.exp(-x) * bessel_I_order_derivative_half(x)
    assert abs(scaled * 2 * x - 1) < 0.02


def test_exponential_integrals():
    assert exp_integrals(1.0).e1 == pytest.approx(0.2193839, abs=1e-7)
    for x in (0.3, 1.0, 5.0, 29.0, 31.0, 80.0):
        e = exp_integrals(x)
        assert e.ei_scaled == pytest.approx(e.ei * math.exp(-x), rel=1e-10)
        assert e.e1_scaled == pytest.approx(e.e1 * math.exp(x), rel=1e-10)
    x = 200.0
    e = exp_integrals(x)
    assert abs(x * e.ei_scaled - 1 - 1 / x) <= 3 / x ** 2
    assert abs(x * e.e1_scaled - 1 + 1 / x) <= 3 / x ** 2
    with pytest.raises(DomainError):
        exp_integrals(-1.0)


@given(x=st.floats(0.05, 60))
@settings(max_examples=50)
def test_exponential_integrals_against_mpmath(x):
    import mpmath

    e = exp_integrals(x)
    assert e.ei == pytest.approx(float(mpmath.ei(x)), rel=1e-10)
    assert e.e1 == pytest.approx(float(mpmath.e1(x)), rel=1e-10)


def _exp_decay(x, j):
    return (-1) ** j * math.exp(-x)


def test_euler_maclaurin_exponential():
    assert euler_maclaurin_check(_exp_decay, 1 / 3, 0, 20, 2) <= 1e-9
    assert euler_maclaurin_check(_exp_decay, 1 / 3, 4, 4, 2) == 0.0


def test_euler_maclaurin_polynomial_below_order():
    coeffs = [1.0, -2.0, 0.5]

    def poly(x, j):
        c = np.polynomial.polynomial.polyder(coeffs, j) if j else coeffs
        return float(np.polynomial.polynomial.polyval(x, c)) if len(c) else 0.0

    assert euler_maclaurin_check(poly, 0.25, 0, 7, 4) <= 1e-10


def test_euler_maclaurin_needs_enough_derivatives():
    from partition_ap.errors import ContractError

    with pytest.raises((ContractError, ValueError)):
        euler_maclaurin_check(_exp_decay, 0.5, 0, 5, 3, max_order=2)


@pytest.mark.parametrize("theta", [-math.pi / 3, -0.4, 0.0, 0.7, math.pi / 3])
def test_euler_maclaurin_rotated(theta):
    z = cmath.exp(1j * theta)

    def f(w, j):
        return (-1) ** j * cmath.exp(-w)

    assert euler_maclaurin_complex_check(f, 1.0, 0.3, z, 3) <= 1e-8
