"""Closed-form leading asymptotics of T_{R,r}(n).

Predictions are kept as an (exponent, mantissa) pair with value
mantissa * e^{exponent}, so ratios and differences stay finite for n far
beyond the double-precision range of e^{pi sqrt(2 n / 3)}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from numpy.polynomial.legendre import leggauss

from .circle import epsilon_R, shifted_index
from .errors import DomainError, check_not_multiple_of_24
from .lattice import Axis, class_index, tail_sum
from .partitions import check_residue_class
from .qseries import DEFAULT_TP, TruncationParams
from .specfun import (
    EULER_GAMMA,
    MAX_BERNOULLI,
    bernoulli_number,
    bernoulli_poly,
    digamma_rational,
    exp_integrals,
)

__all__ = [
    "AsymptoticPrediction",
    "a_coefficients",
    "antisymmetric_3_1_explicit",
    "corollary_1_3_eval",
    "corollary_1_4_eval",
    "corollary_1_5_eval",
    "corollary_1_6_ratio",
    "epsilon_R",
    "psi_kernel",
    "psi_kernel_series",
]

_PANEL_NODES = 8


@dataclass(frozen=True)
class AsymptoticPrediction:
    n: int
    exponent: float
    mantissa: float
    terms: dict

    @property
    def value(self) -> mpmath.mpf:
        return mpmath.mpf(self.mantissa) * mpmath.exp(self.exponent)

    @property
    def log_value(self) -> float:
        return self.exponent + math.log(self.mantissa)

    @property
    def bracket(self) -> float:
        return math.fsum(self.terms.values())

    def ratio_to(self, exact: int) -> float:
        """exact / prediction, without overflowing."""
        return float(mpmath.mpf(exact) / self.value)


def _growth(n: int) -> tuple[float, float]:
    """(pi sqrt(2 n_s / 3), n_s)."""
    ns = float(shifted_index(n))
    return math.pi * math.sqrt(2 * ns / 3), ns


# --- the kernel Psi ----------------------------------------------------------

def psi_kernel(R: int, r: int, t: float, tp: TruncationParams = DEFAULT_TP) -> float:
    """sum over n1, n2 != 0 of R^2 t zeta_R^{r n1} / (n1 n2 (R t - n1 n2))."""
    check_residue_class(R, r)
    t = float(t)
    if t == 0:
        return 0.0
    Rt = R * t
    if abs(Rt - round(Rt)) < 1e-14 and round(Rt) != 0:
        raise DomainError(f"R t = {Rt} hits a pole of the kernel")
    N = tp.lattice_radius
    ax1 = Axis(0, 1, N, R)
    ax2 = Axis(0, 1, N, 1)
    n1, n2 = ax1.box(), ax2.box()
    phase = np.exp(2j * np.pi * r * ax1.classes() / R)[:, None]
    a = np.outer(n1, n2).astype(float)
    box = np.sum(phase[class_index(n1, ax1)] * (R * R * t / (a * (Rt - a))))
    # outside the box |a| > N > R t, where 1/(a (R t - a)) = -sum_m (R t)^{m-2} a^{-m}
    order = max(4, int(math.ceil(18 / max(math.log10(N / max(abs(Rt), 1e-300)), 0.5))))
    coefs = {m: -R * R * t * Rt ** (m - 2) for m in range(2, order + 2)}
    total = complex(box) + tail_sum(ax1, ax2, phase, coefs)
    return total.real


def psi_kernel_series(R: int, r: int, t: float, terms: int = 30) -> float:
    """-sum over even m of R^m t^{m-1} (2 pi)^{2m} B_m B_m(r/R) / (m!)^2, valid for |t| < 1/R."""
    check_residue_class(R, r)
    if abs(R * t) >= 1:
        raise DomainError("the Bernoulli expansion needs |R t| < 1")
    x = Fraction(r, R)
    total = 0.0
    for m in range(2, min(2 * terms, MAX_BERNOULLI) + 1, 2):
        coeff = float(bernoulli_number(m) * bernoulli_poly(m, x)) / math.factorial(m) ** 2
        total -= R ** m * t ** (m - 1) * (2 * math.pi) ** (2 * m) * coeff
    return total


@lru_cache(maxsize=64)
def _psi_nodes(R: int, r: int, tp: TruncationParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Panel Gauss nodes on [0, eps_R], their weights, and Psi at the nodes."""
    eps = float(epsilon_R(R))
    x, w = leggauss(_PANEL_NODES)
    edges = np.linspace(0, eps, tp.quad_panels + 1)
    nodes, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        nodes.append((hi - lo) / 2 * x + (hi + lo) / 2)
        weights.append((hi - lo) / 2 * w)
    nodes, weights = np.concatenate(nodes), np.concatenate(weights)
    values = np.array([psi_kernel(R, r, t, tp) for t in nodes])
    return nodes, weights, values


def psi_integral(R: int, r: int, n: int, tp: TruncationParams = DEFAULT_TP) -> float:
    """int_0^{eps_R} Psi_{R,r}(t) exp(-pi sqrt(2 n_s/3) (1 - sqrt(1 - 24 t))) dt."""
    growth, _ = _growth(n)
    nodes, weights, values = _psi_nodes(R, r, tp)
    damp = np.exp(-growth * (1 - np.sqrt(1 - 24 * nodes)))
    return float(np.sum(weights * values * damp))


# --- leading asymptotics ------------------------------------------------------

def corollary_1_3_eval(R: int, r: int, n: int, tp: TruncationParams = DEFAULT_TP) -> AsymptoticPrediction:
    """Full leading-exponential prediction for T_{R,r}(n), with every bracket term labelled."""
    check_residue_class(R, r)
    check_not_multiple_of_24(R)
    if n < 1:
        raise DomainError("n must be positive")
    growth, ns = _growth(n)
    terms = {
        "log": math.log(ns),
        "constant": -math.log(math.pi ** 2 / 6) - 2 * math.log(R),
        "digamma": -2 * digamma_rational(Fraction(r, R)),
        "power_half": math.pi * (2 * r - R) / (2 * math.sqrt(6 * ns)),
        "power_one": (R - 2 * r) / (4 * ns),
        "exp_integral": 2 * exp_integrals(2 * growth).ei_scaled,
        "psi_integral": 2 * psi_integral(R, r, n, tp),
    }
    mantissa = math.fsum(terms.values()) / (4 * math.pi * R * math.sqrt(2 * ns))
    return AsymptoticPrediction(n, growth, mantissa, terms)


def a_coefficients(R: int, r: int, L: int) -> list[float]:
    """a_{R,r,l} for l = 0 .. L."""
    check_residue_class(R, r)
    check_not_multiple_of_24(R)
    if L < 0:
        raise DomainError("L must be nonnegative")
    if L > MAX_BERNOULLI:
        raise DomainError(f"a-coefficients are available up to l = {MAX_BERNOULLI}")
    x = Fraction(r, R)
    pi = mpmath.pi
    with mpmath.workdps(30):
        out = [
            float(-mpmath.log(pi ** 2 / 6) - 2 * mpmath.digamma(mpmath.mpf(r) / R) - 2 * mpmath.log(R)),
        ]
        if L >= 1:
            out.append(float((6 + pi ** 2 * (2 * r - R)) / (2 * mpmath.sqrt(6) * pi)))
        for ell in range(2, L + 1):
            inner = mpmath.mpf(0)
            for j in range(-(-ell // 4), ell // 2 + 1):
                exact = Fraction(ell, 2 * j) * bernoulli_number(2 * j) * bernoulli_poly(2 * j, x) / (
                    math.factorial(ell - 2 * j) * math.factorial(4 * j - ell) * math.factorial(2 * j)
                )
                inner += mpmath.mpf(exact.numerator) / exact.denominator * (2 * pi ** 2 * R / 3) ** (2 * j)
            val = 2 * math.factorial(ell - 1) * (mpmath.sqrt(3) / (2 * mpmath.sqrt(2) * pi)) ** ell * (
                1 - (-1) ** ell * inner
            )
            if ell == 2:
                val += mpmath.mpf(R - 2 * r) / 4
            out.append(float(val))
    return out


def corollary_1_4_eval(R: int, r: int, n: int, L: int) -> AsymptoticPrediction:
    """Power-series form: log n_s + sum_{l <= L} a_l n_s^{-l/2}."""
    growth, ns = _growth(n)
    coeffs = a_coefficients(R, r, L)
    terms = {"log": math.log(ns)}
    terms.update({f"a{ell}": a / ns ** (ell / 2) for ell, a in enumerate(coeffs)})
    mantissa = math.fsum(terms.values()) / (4 * math.pi * R * math.sqrt(2 * ns))
    return AsymptoticPrediction(n, growth, mantissa, terms)


def corollary_1_5_eval(R: int, r: int, n: int) -> mpmath.mpf:
    """Prediction for T_{R,r}(n) - T_{R,R-r}(n), including the secondary exponentials for R > 32."""
    if R < 2 or not 1 <= r <= R - 1:
        raise DomainError("need 1 <= r <= R - 1")
    if n < 1:
        raise DomainError("n must be positive")
    with mpmath.workdps(max(_dps_for(n), mpmath.mp.dps)):
        ns = _mpq(shifted_index(n))
        pi = mpmath.pi
        b0 = pi * mpmath.cot(pi * r / R)
        b1 = pi * (2 * r - R) / (2 * mpmath.sqrt(6))
        b2 = mpmath.mpf(R - 2 * r) / 4
        main = mpmath.exp(pi * mpmath.sqrt(2 * ns / 3)) / (2 * pi * R * mpmath.sqrt(2 * ns)) * (
            b0 + b1 / mpmath.sqrt(ns) + b2 / ns
        )
        return main + _antisymmetric_secondary(R, r, ns)


def _antisymmetric_secondary(R: int, r: int, ns) -> mpmath.mpf:
    pi = mpmath.pi
    total = mpmath.mpf(0)
    for a1 in range(1, R):
        for a2 in range(1, R):
            if 32 * a1 * a2 >= R:
                continue
            shrink = 1 - mpmath.mpf(24 * a1 * a2) / R
            total += mpmath.sin(2 * pi * r * a1 / R) * mpmath.exp(pi * mpmath.sqrt(2 * shrink * ns / 3))
    return total * mpmath.sqrt(2 / ns) / R


def antisymmetric_3_1_explicit(n: int) -> mpmath.mpf:
    """The three-term closed form for T_{3,1}(n) - T_{3,2}(n)."""
    with mpmath.workdps(max(_dps_for(n), mpmath.mp.dps)):
        ns = _mpq(shifted_index(n))
        lead = mpmath.exp(mpmath.pi * mpmath.sqrt(2 * ns / 3)) / (6 * mpmath.sqrt(6 * ns))
        return lead * (1 - 1 / (2 * mpmath.sqrt(2 * ns)) + mpmath.sqrt(3) / (4 * mpmath.pi * ns))


def corollary_1_6_ratio(R: int, r: int, n: int) -> float:
    """Predicted T_{R,r}(n) / T_{1,1}(n) through second order in 1/log."""
    check_residue_class(R, r)
    check_not_multiple_of_24(R)
    ns = float(shifted_index(n))
    ell = math.log(math.exp(EULER_GAMMA) * math.sqrt(6 * ns) / math.pi)
    c = math.log(R) + digamma_rational(Fraction(r, R)) + EULER_GAMMA
    second = math.pi / (4 * math.sqrt(6 * ns) * ell) * (
        2 * r - R - 1 + (6 + math.pi ** 2) * c / (math.pi ** 2 * ell)
    )
    return (1 - c / ell + second) / R


def _dps_for(n: int) -> int:
    """Enough digits to resolve T(n)-sized values to well below one unit."""
    return int(_growth(n)[0] / math.log(10)) + 20


def _mpq(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator
