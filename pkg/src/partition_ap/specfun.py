"""Special functions consumed by the asymptotic formulas.

Double precision throughout except for Bernoulli numbers, which are exact
rationals. Exponential integrals are always returned together with their
scaled forms ``Ei(x) e^{-x}`` and ``E1(x) e^{x}`` so callers never need the
overflowing unscaled values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import integrate

from .partitions import DomainError

EULER_GAMMA = 0.57721566490153286060651209008240243
MAX_BERNOULLI = 64


# --- Bernoulli numbers and polynomials -------------------------------------

@lru_cache(maxsize=1)
def _bernoulli_table() -> tuple[Fraction, ...]:
    # Akiyama-Tanigawa; it produces B_1 = +1/2, flipped below.
    out = []
    a = [Fraction(0)] * (MAX_BERNOULLI + 1)
    for m in range(MAX_BERNOULLI + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    out[1] = -out[1]
    return tuple(out)


def bernoulli_number(j: int) -> Fraction:
    """Exact B_j with B_1 = -1/2."""
    if j < 0:
        raise DomainError("Bernoulli index must be nonnegative")
    if j > MAX_BERNOULLI:
        raise DomainError(f"Bernoulli numbers are tabulated up to j = {MAX_BERNOULLI}")
    return _bernoulli_table()[j]


def bernoulli_poly(ell: int, x, periodic: bool = False):
    """B_ell(x); with ``periodic=True`` the 1-periodic B_ell(x - floor(x)).

    Exact when ``x`` is an int or Fraction, float otherwise.
    """
    if periodic:
        x = x - math.floor(x)
    exact = isinstance(x, (int, Fraction))
    total = Fraction(0) if exact else 0.0
    power = Fraction(1) if exact else 1.0
    # Horner-free form is fine for ell <= 64 with exact input; floats use the
    # same loop and are only called with small ell.
    for k in range(ell, -1, -1):
        b = bernoulli_number(k)
        coeff = math.comb(ell, k) * (b if exact else float(b))
        total += coeff * power
        power *= x
    return total


def bernoulli_fourier(ell: int, x: float, terms: int = 100_000) -> float:
    """Truncated Fourier series  -ell! sum_m 2cos(2 pi m x - pi ell/2)/(2 pi m)^ell."""
    m = np.arange(1, terms + 1, dtype=float)
    s = np.sum(2.0 * np.cos(2 * np.pi * m * x - np.pi * ell / 2) / (2 * np.pi * m) ** ell)
    return -math.factorial(ell) * float(s)


def sawtooth(x):
    """((x)): x - floor(x) - 1/2 off the integers, 0 on them."""
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        if x.denominator == 1:
            return Fraction(0)
        return x - math.floor(x) - Fraction(1, 2)
    if x == math.floor(x):
        return 0.0
    return x - math.floor(x) - 0.5


# --- digamma at rationals --------------------------------------------------

def digamma_rational(a) -> float:
    """psi(p/q) for 0 < p/q <= 1 by Gauss's digamma theorem."""
    a = Fraction(a)
    if a <= 0 or a > 1:
        raise DomainError(f"digamma_rational needs 0 < a <= 1, got {a}")
    p, q = a.numerator, a.denominator
    if p == q:
        return -EULER_GAMMA
    s = -EULER_GAMMA - math.log(2 * q) - 0.5 * math.pi / math.tan(math.pi * p / q)
    for k in range(1, (q + 1) // 2):
        s += 2 * math.cos(2 * math.pi * k * p / q) * math.log(math.sin(math.pi * k / q))
    return s


def digamma_asymptotic(x: float, terms: int = 50) -> float:
    """psi(x) by upward recurrence to x >= 20 and the Stirling series.

    Independent of the Gauss formula; used as a cross-check.
    """
    shift = 0.0
    while x < 20.0:
        shift -= 1.0 / x
        x += 1.0
    s = math.log(x) - 0.5 / x
    xp = x * x
    for k in range(1, terms + 1):
        term = float(bernoulli_number(2 * k)) / (2 * k * xp)
        s -= term
        if abs(term) < 1e-18:
            break
        xp *= x * x
    return s + shift


# --- Bessel I of half-integer order ----------------------------------------

def _check_positive(x: float, name: str) -> None:
    if not x > 0:
        raise DomainError(f"{name} requires x > 0, got {x}")


def bessel_I_half(x: float) -> float:
    _check_positive(x, "bessel_I_half")
    return math.sqrt(2.0 / (math.pi * x)) * math.sinh(x)


def bessel_I_3half(x: float) -> float:
    _check_positive(x, "bessel_I_3half")
    if x < 0.05:
        # cosh x - sinh x / x = x^2/3 + x^4/30 + x^6/840 + ...
        x2 = x * x
        bracket = x2 / 3 * (1 + x2 / 10 * (1 + x2 / 28 * (1 + x2 / 54)))
    else:
        bracket = math.cosh(x) - math.sinh(x) / x
    return math.sqrt(2.0 / (math.pi * x)) * bracket


def bessel_I_series(kappa: float, x: float) -> float:
    """General-order I_kappa(x) from its power series; cross-check oracle."""
    half = x / 2.0
    term = math.exp(kappa * math.log(half) - math.lgamma(kappa + 1))
    total = term
    m = 0
    while True:
        m += 1
        term *= half * half / (m * (m + kappa))
        total += term
        if term < 1e-18 * total:
            return total


def bessel_I_order_derivative_half(x: float) -> float:
    """d/d(kappa) I_kappa(x) at kappa = 1/2, via the exponential integrals."""
    _check_positive(x, "bessel_I_order_derivative_half")
    ei = exp_integrals(2 * x)
    return -(ei.ei_scaled * math.exp(x) + ei.e1_scaled * math.exp(-x)) / math.sqrt(2 * math.pi * x)


# --- exponential integrals -------------------------------------------------

@dataclass(frozen=True)
class ExpIntegrals:
    ei: float
    e1: float
    ei_scaled: float  # Ei(x) e^{-x}
    e1_scaled: float  # E1(x) e^{x}


def _ei_series(x: float) -> float:
    total = 0.0
    term = 1.0
    k = 0
    while True:
        k += 1
        term *= x / k
        contrib = term / k
        total += contrib
        if contrib < 1e-17 * total:
            break
    return EULER_GAMMA + math.log(x) + total


def _ei_scaled_asymptotic(x: float) -> float:
    # Ei(x) e^{-x} ~ (1/x) sum k!/x^k, truncated at the smallest term
    total = 1.0
    term = 1.0
    k = 0
    while True:
        k += 1
        nxt = term * k / x
        if nxt >= term or nxt < 1e-17:
            break
        term = nxt
        total += term
    return total / x


def _e1_series(x: float) -> float:
    total = 0.0
    term = -1.0
    k = 0
    while True:
        k += 1
        term *= -x / k
        contrib = term / k
        total += contrib
        if abs(contrib) < 1e-17 * abs(total) + 1e-300:
            break
    return -EULER_GAMMA - math.log(x) + total


def _e1_scaled_cf(x: float) -> float:
    # e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...))), modified Lentz
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10_000):
        a = -float(i * i)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h
    raise ArithmeticError("E1 continued fraction did not converge")


def exp_integrals(x: float) -> ExpIntegrals:
    """Ei, E1 and their scaled forms at x > 0 (overflowing values become inf)."""
    _check_positive(x, "exp_integrals")
    if x <= 30.0:
        ei = _ei_series(x)
        ei_scaled = ei * math.exp(-x)
    else:
        ei_scaled = _ei_scaled_asymptotic(x)
        ei = ei_scaled * math.exp(x) if x < 709.0 else math.inf
    if x <= 1.0:
        e1 = _e1_series(x)
        e1_scaled = e1 * math.exp(x)
    else:
        e1_scaled = _e1_scaled_cf(x)
        e1 = e1_scaled * math.exp(-x)
    return ExpIntegrals(ei, e1, ei_scaled, e1_scaled)


# --- shifted Euler-Maclaurin ----------------------------------------------

def _quad_pieces(g: Callable[[float], complex], lo: float, hi: float, breaks) -> complex:
    pts = [lo] + sorted(b for b in breaks if lo < b < hi) + [hi]
    total = 0j
    for u, v in zip(pts[:-1], pts[1:]):
        re = integrate.quad(lambda x: complex(g(x)).real, u, v, epsabs=1e-14, epsrel=1e-13, limit=200)[0]
        im = integrate.quad(lambda x: complex(g(x)).imag, u, v, epsabs=1e-14, epsrel=1e-13, limit=200)[0]
        total += complex(re, im)
    return total


def euler_maclaurin_check(
    f: Callable[[float, int], float],
    a: float,
    M1: int,
    M2: int,
    L: int,
    max_order: int | None = None,
) -> float:
    """|LHS - RHS| of the shifted Euler-Maclaurin formula on [M1, M2].

    ``f(x, j)`` returns the j-th derivative of f at x. ``max_order`` is the
    highest derivative ``f`` can supply; it must be at least ``L``.
    """
    if max_order is not None and max_order < L:
        raise ValueError(f"formula of order L={L} needs derivatives up to {L}, f supplies {max_order}")
    if not 0 <= a <= 1:
        raise DomainError("shift a must lie in [0, 1]")
    if M2 < M1:
        raise DomainError("need M2 >= M1")
    if M1 == M2:
        return 0.0
    lhs = math.fsum(f(m + a, 0) for m in range(M1, M2))
    breaks = [m + a for m in range(M1, M2 + 1)] + list(range(M1, M2 + 1))
    integral = _quad_pieces(lambda x: f(x, 0), M1, M2, breaks).real
    boundary = math.fsum(
        float(bernoulli_poly(m + 1, Fraction(a).limit_denominator(10**12) if isinstance(a, Fraction) else a))
        / math.factorial(m + 1) * (f(M1, m) - f(M2, m))
        for m in range(L)
    )
    remainder = _quad_pieces(
        lambda x: bernoulli_poly(L, x - a, periodic=True) * f(x, L), M1, M2, breaks
    ).real
    rhs = integral - boundary + (-1) ** (L + 1) / math.factorial(L) * remainder
    return abs(lhs - rhs)


def euler_maclaurin_complex_check(
    f: Callable[[complex, int], complex],
    integral_0_inf: complex,
    a: float,
    z: complex,
    L: int,
    cutoff: float = 80.0,
    lhs_terms: int = 10_000,
) -> float:
    """|LHS - RHS| of the half-line, rotated-argument Euler-Maclaurin formula.

    ``integral_0_inf`` is the integral of f over [0, inf); the remainder
    integral is truncated at ``cutoff`` (f must be negligible beyond
    ``cutoff * |z|`` along the ray).
    """
    lhs = 0j
    for m in range(lhs_terms):
        term = f((m + a) * z, 0)
        lhs += term
        if abs(term) < 1e-18 and m > 10:
            break
    boundary = sum(
        float(bernoulli_poly(m + 1, a)) / math.factorial(m + 1) * f(0j, m) * z**m for m in range(L)
    )
    breaks = [m + a for m in range(int(cutoff) + 1)]
    remainder = _quad_pieces(
        lambda x: bernoulli_poly(L, x - a, periodic=True) * f(x * z, L), 0.0, cutoff, breaks
    )
    rhs = integral_0_inf / z - boundary + (-1) ** (L + 1) * z**L / math.factorial(L) * remainder
    return abs(lhs - rhs)
