"""Direct evaluation of the q-series and lattice objects behind F_{R,r}.

Covers the Lambert series F_{R,r,kappa}, the Dedekind eta function, the
indefinite and false-indefinite theta functions f, g, the principal-value
Mordell integral I with its principal / nonprincipal split, and numerical
checks of the modular transformation of F_{R,r} and of the Euler-Maclaurin
identity behind it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate
from scipy.special import exp1, expi

from .lattice import Axis, class_index, tail_sum
from .partitions import DomainError, check_residue_class
from .specfun import exp_integrals, digamma_rational, sawtooth
from .transform import TransformFrame, constants_ABC, weil_multiplier

# |y| beyond which the PV kernel switches to its asymptotic expansion
_ASYMPTOTIC_Y = 40.0
_TAIL_ORDER = 14


@dataclass(frozen=True)
class TruncationParams:
    q_order: int = 400
    lattice_radius: int = 60
    quad_panels: int = 64
    pv_window: float = 40.0
    tol: float = 1e-9

    def __post_init__(self):
        if min(self.q_order, self.lattice_radius, self.quad_panels) < 1:
            raise ValueError("truncation orders must be positive")
        if not 0 < self.tol < 1 or self.pv_window <= 0:
            raise ValueError("need 0 < tol < 1 and pv_window > 0")

    def doubled(self) -> "TruncationParams":
        return TruncationParams(
            2 * self.q_order, 2 * self.lattice_radius, 2 * self.quad_panels, 2 * self.pv_window, self.tol
        )


DEFAULT_TP = TruncationParams()


@dataclass(frozen=True)
class UpperHalfPoint:
    tau: complex

    def __post_init__(self):
        _check_tau(self.tau)

    @property
    def q(self) -> complex:
        return _q(self.tau)

    def __complex__(self) -> complex:
        return complex(self.tau)


@dataclass(frozen=True)
class LatticeShift:
    """The shift alpha / R of Z^2, with alpha reduced mod R."""

    R: int
    alpha: tuple[int, int]

    def __post_init__(self):
        if self.R < 1:
            raise DomainError("R must be a positive integer")
        a1, a2 = self.alpha
        object.__setattr__(self, "alpha", (a1 % self.R, a2 % self.R))

    def negated(self) -> "LatticeShift":
        return LatticeShift(self.R, (-self.alpha[0], -self.alpha[1]))

    def swapped(self) -> "LatticeShift":
        return LatticeShift(self.R, (self.alpha[1], self.alpha[0]))


def _check_tau(tau) -> complex:
    tau = complex(tau)
    if not tau.imag > 0:
        raise DomainError(f"tau must lie in the upper half-plane, got {tau}")
    return tau


def _q(tau: complex) -> complex:
    return cmath.exp(2j * math.pi * tau)


# --- Lambert series and eta ------------------------------------------------

def eisenstein_F(R: int, r: int, kappa: int, tau: complex, tp: TruncationParams = DEFAULT_TP) -> complex:
    """sum_{m = r (R), m <= q_order} m^{kappa-1} q^m / (1 - q^m)."""
    check_residue_class(R, r)
    if kappa < 1:
        raise DomainError("kappa must be a positive integer")
    q = _q(_check_tau(tau))
    m = np.arange(r, tp.q_order + 1, R, dtype=float)
    qm = q ** m
    return complex(np.sum(m ** (kappa - 1) * qm / (1 - qm)))


def lambert_coefficients(R: int, r: int, kappa: int, cap: int) -> list[int]:
    """q-expansion coefficients of F_{R,r,kappa} up to q^cap."""
    c = [0] * (cap + 1)
    for m in range(r, cap + 1, R):
        for j in range(m, cap + 1, m):
            c[j] += m ** (kappa - 1)
    return c


def dedekind_eta(tau: complex, tp: TruncationParams = DEFAULT_TP) -> complex:
    tau = _check_tau(tau)
    q = _q(tau)
    n = np.arange(1, tp.q_order + 1, dtype=float)
    return cmath.exp(2j * math.pi * tau / 24) * complex(np.prod(1 - q ** n))


# --- indefinite and false-indefinite theta ---------------------------------

def _positive_progression(a: int, R: int) -> int:
    """Smallest positive integer = a (mod R)."""
    a %= R
    return a if a else R


def _quadrant_sum(R: int, c1: int, c2: int, tau: complex, tol: float) -> complex:
    """sum over positive u_i = c_i (mod R) of e^{2 pi i tau u1 u2 / R}."""
    # fractional powers of q would take the principal branch; exponentiate tau directly
    log_q = 2j * math.pi * tau
    # u1 u2 / R beyond this contributes below tol * 1e-3 in modulus
    cap = R * (math.log(tol * 1e-3) / log_q.real) + R
    total = 0j
    u1 = c1
    while u1 * c2 <= cap:
        u2 = np.arange(c2, cap / u1 + 1, R, dtype=float)
        total += complex(np.sum(np.exp(log_q * (u1 * u2 / R))))
        u1 += R
    return total


def _theta_quadrants(shift: LatticeShift, tau: complex, tp: TruncationParams) -> tuple[complex, complex]:
    tau = _check_tau(tau)
    R = shift.R
    a1, a2 = shift.alpha
    pp = _quadrant_sum(R, _positive_progression(a1, R), _positive_progression(a2, R), tau, tp.tol)
    mm = _quadrant_sum(R, _positive_progression(-a1, R), _positive_progression(-a2, R), tau, tp.tol)
    return pp, mm


def indef_theta_f(shift: LatticeShift, tau: complex, tp: TruncationParams = DEFAULT_TP) -> complex:
    """(1/4) sum (sgn n1 + sgn n2) q^{R n1 n2} over Z^2 + alpha/R, n1 n2 != 0.

    Mixed-sign points cancel, so only the two same-sign quadrants remain.
    """
    pp, mm = _theta_quadrants(shift, tau, tp)
    return (pp - mm) / 2


def false_theta_g(shift: LatticeShift, tau: complex, tp: TruncationParams = DEFAULT_TP) -> complex:
    """(1/4) sum (1 + sgn n1 sgn n2) q^{R n1 n2} over Z^2 + alpha/R, n1 n2 != 0."""
    pp, mm = _theta_quadrants(shift, tau, tp)
    return (pp + mm) / 2


def theta_box_sum(shift: LatticeShift, tau: complex, radius: int, weight: str) -> complex:
    """Plain box truncation of f or g (|n_i| <= radius); cross-check only."""
    tau = _check_tau(tau)
    R, alpha = shift.R, shift.alpha
    u1 = Axis(alpha[0] % R, R, R * radius, R).box().astype(float)
    u2 = Axis(alpha[1] % R, R, R * radius, R).box().astype(float)
    s1, s2 = np.sign(u1)[:, None], np.sign(u2)[None, :]
    w = (s1 + s2) if weight == "f" else (1 + s1 * s2)
    expo = np.outer(u1, u2) / R
    mask = w != 0
    return complex(np.sum(w[mask] * np.exp(2j * math.pi * tau * expo[mask])) / 4)


# --- the PV Laplace kernel -------------------------------------------------

def _pv_kernel_asymptotic(y: np.ndarray, positive: np.ndarray) -> np.ndarray:
    """-sum_{k>=1} k!/y^{k+1}, cut at the smallest term, plus the Stokes term for a > 0.

    Only used for |y| >= 40, where the smallest term is below 1e-16 relative.
    """
    total = np.zeros_like(y)
    term = 1.0 / (y * y)
    live = np.ones(y.shape, dtype=bool)
    for k in range(1, 80):
        total = total - np.where(live, term, 0)
        nxt = term * (k + 1) / y
        live &= (np.abs(nxt) < np.abs(term)) & (np.abs(nxt) > 1e-18 * np.abs(total))
        if not live.any():
            break
        term = nxt
    stokes = np.zeros_like(y)
    if positive.any():
        yp = y[positive]
        stokes[positive] = -1j * np.pi * np.sign(yp.imag) * np.exp(-yp)
    return total + stokes


def pv_kernel(a: np.ndarray, w: complex) -> np.ndarray:
    """PV int_0^inf x e^{-2 pi w x} / (a (x - a)) dx, vectorized over real a != 0.

    Closed form with y = 2 pi w a: 1/y - e^{-y} Ei(y) for a > 0 and
    1/y + e^{-y} E1(-y) for a < 0, both analytically continued in w.
    """
    a = np.asarray(a, dtype=float)
    y = 2 * np.pi * complex(w) * a
    out = np.empty(y.shape, dtype=complex)
    big = np.abs(y) >= _ASYMPTOTIC_Y
    if np.any(big):
        out[big] = _pv_kernel_asymptotic(y[big], a[big] > 0)
    small = ~big
    if np.any(small):
        ys, as_ = y[small], a[small]
        pos = as_ > 0
        res = np.empty(ys.shape, dtype=complex)
        if np.any(pos):
            yp = ys[pos]
            ei = expi(yp) if np.any(yp.imag != 0) else expi(yp.real) + 0j
            res[pos] = 1 / yp - np.exp(-yp) * ei
        if np.any(~pos):
            yn = ys[~pos]
            res[~pos] = 1 / yn + np.exp(-yn) * exp1(-yn)
        out[small] = res
    return out


def pv_laplace_pole(w: complex, alpha: float) -> complex:
    """PV int_0^inf x e^{-2 pi w x} / (alpha (x - alpha)) dx."""
    w = complex(w)
    if not w.real > 0:
        raise DomainError("need Re(w) > 0")
    if alpha == 0:
        raise DomainError("alpha must be nonzero")
    return complex(pv_kernel(np.array([alpha]), w)[0])


def pv_laplace_pole_quadrature(w: complex, alpha: float) -> complex:
    """The same PV integral by pole subtraction and adaptive quadrature.

    Uses x/(x - alpha) = 1 + alpha/(x - alpha). Over the symmetric window
    [alpha - d, alpha + d] the pole is removed by subtracting e^{-2 pi w alpha}
    (its PV over the window is 0); the rest is smooth.
    """
    w = complex(w)
    c = 2 * math.pi * w

    def quad(fn, lo, hi):
        re = integrate.quad(lambda x: fn(x).real, lo, hi, epsabs=1e-15, epsrel=1e-13, limit=400)[0]
        im = integrate.quad(lambda x: fn(x).imag, lo, hi, epsabs=1e-15, epsrel=1e-13, limit=400)[0]
        return complex(re, im)

    first = 1 / c
    cutoff = alpha + 60 / c.real if alpha > 0 else 60 / c.real
    if alpha < 0:
        second = quad(lambda x: cmath.exp(-c * x) / (x - alpha), 0, cutoff)
        second += quad(lambda x: cmath.exp(-c * x) / (x - alpha), cutoff, np.inf)
        return first / alpha + second
    d = alpha / 2
    pole_val = cmath.exp(-c * alpha)
    inner = quad(lambda x: (cmath.exp(-c * x) - pole_val) / (x - alpha) if x != alpha else -c * pole_val,
                 alpha - d, alpha + d)
    left = quad(lambda x: cmath.exp(-c * x) / (x - alpha), 0, alpha - d)
    right = quad(lambda x: cmath.exp(-c * x) / (x - alpha), alpha + d, cutoff)
    right += quad(lambda x: cmath.exp(-c * x) / (x - alpha), cutoff, np.inf)
    return first / alpha + inner + left + right


def pv_laplace_pole_real(w: float, alpha: float) -> float:
    """Real-parameter closed form through Ei / E1 from the special-function module."""
    y = 2 * math.pi * w * alpha
    if alpha > 0:
        return 1 / y - exp_integrals(y).ei_scaled
    return 1 / y + exp_integrals(-y).e1_scaled


def lemma_pv_bound(w: complex, alpha: float) -> float:
    """pi e^{-2 pi alpha w1} [alpha > 0] + 1/(alpha^2 w1^2)."""
    w1 = complex(w).real
    return (math.pi * math.exp(-2 * math.pi * alpha * w1) if alpha > 0 else 0.0) + 1 / (alpha * alpha * w1 * w1)


def _pv_tail_coefs(w: complex, scale: float, order: int = _TAIL_ORDER) -> dict[int, complex]:
    """Coefficients of (u1 u2)^{-m} for P(scale * u1 u2, w) at large argument."""
    y_unit = 2 * math.pi * complex(w) * scale
    return {m: -math.factorial(m - 1) / y_unit ** m for m in range(2, order + 2)}


# --- Mordell integral ------------------------------------------------------

def _mordell_axes(R: int, alpha, rho: Fraction, radius: int) -> tuple[Axis, Axis, int]:
    M = R * rho.denominator
    ax1 = Axis(alpha[0] % R, R, R * radius, M)
    ax2 = Axis(alpha[1] % R, R, R * radius, M)
    return ax1, ax2, M


def _phase_table(ax1: Axis, ax2: Axis, rho: Fraction, R: int) -> np.ndarray:
    """e^{2 pi i R rho n1 n2} per class pair, with R n1 n2 = u1 u2 / R reduced exactly."""
    M = ax1.period
    c1, c2 = ax1.classes(), ax2.classes()
    num = (rho.numerator * np.outer(c1, c2)) % M  # rho u1 u2 / R = num / (R q)
    return np.exp(2j * np.pi * num / M)


def _lattice_pv_sum(R: int, alpha, rho: Fraction, w: complex, tp: TruncationParams, kernel, tail_coefs) -> complex:
    ax1, ax2, M = _mordell_axes(R, alpha, rho, tp.lattice_radius)
    u1, u2 = ax1.box(), ax2.box()
    phase = _phase_table(ax1, ax2, rho, R)
    i1, i2 = class_index(u1, ax1), class_index(u2, ax2)
    a = np.outer(u1, u2).astype(float) / R
    box = np.sum(phase[np.ix_(i1, i2)] * kernel(a))
    return complex(box) + tail_sum(ax1, ax2, phase, tail_coefs)


def mordell_I(R: int, alpha, rho, tau: complex, tp: TruncationParams = DEFAULT_TP) -> complex:
    """(1/2 pi i) sum e^{2 pi i R rho n1 n2} / (R n1 n2) PV int_0^inf x e^{2 pi i (tau - rho) x} / (x - R n1 n2) dx."""
    rho = Fraction(rho)
    tau = _check_tau(tau)
    w = -1j * (tau - float(rho))
    total = _lattice_pv_sum(
        R, alpha, rho, w, tp, lambda a: pv_kernel(a, w), _pv_tail_coefs(w, 1.0 / R)
    )
    return total / (2j * math.pi)


def _check_split(R: int, d: float):
    if d < 0:
        raise DomainError("split point d must be nonnegative")
    if d > 0 and abs(R * d - round(R * d)) < 1e-12 and round(R * d) >= 1:
        raise DomainError("R d must not be a positive integer")


def mordell_I_star(R: int, alpha, rho, d: float, w: complex, tp: TruncationParams = DEFAULT_TP) -> complex:
    """Principal part: e^{2 pi d w}/(2 pi i) sum phase/(a) PV int_0^d x e^{-2 pi w x}/(x - a) dx."""
    _check_split(R, d)
    if d == 0:
        return 0j
    rho = Fraction(rho)
    w = complex(w)
    c = 2 * math.pi * w
    # moments mu_j = int_0^d x^j e^{-c x} dx for the large-|a| expansion
    order = 20
    mu = [_finite_moment(j, d, c) for j in range(order + 2)]
    tail = {m: -mu[m - 1] * R ** m for m in range(2, order + 2)}

    def kernel(a):
        out = np.empty(a.shape, dtype=complex)
        flat_a, flat = a.ravel(), out.ravel()
        for idx, av in enumerate(flat_a):
            flat[idx] = _finite_pv(av, d, c) / av
        return out

    # only |a| comparable to d needs the exact integral; the rest is the series
    def mixed(a):
        near = np.abs(a) < 8 * d + 2
        out = np.zeros(a.shape, dtype=complex)
        out[near] = kernel(a[near])
        far = a[~near]
        acc = np.zeros(far.shape, dtype=complex)
        for j in range(order + 1):
            acc -= mu[j + 1] / far ** (j + 2)
        out[~near] = acc
        return out

    total = _lattice_pv_sum(R, alpha, rho, w, tp, mixed, tail)
    return cmath.exp(c * d) * total / (2j * math.pi)


def _finite_moment(j: int, d: float, c: complex) -> complex:
    """int_0^d x^j e^{-c x} dx by its everywhere-convergent power series in c d."""
    total = 0j
    term = d ** (j + 1)  # (-c)^n d^{j+n+1} / n!
    n = 0
    while True:
        contrib = term / (j + n + 1)
        total += contrib
        if abs(contrib) < 1e-18 * abs(total) and n > abs(c * d):
            return total
        n += 1
        term *= -c * d / n


def _finite_pv(a: float, d: float, c: complex) -> complex:
    """PV int_0^d x e^{-c x} / (x - a) dx."""
    f = lambda x: x * cmath.exp(-c * x)
    if 0 < a < d:
        fa = f(a)
        g = lambda x: (f(x) - fa) / (x - a) if x != a else (1 - c * a) * cmath.exp(-c * a)
        re = integrate.quad(lambda x: g(x).real, 0, d, points=[a], epsabs=1e-16, epsrel=1e-13)[0]
        im = integrate.quad(lambda x: g(x).imag, 0, d, points=[a], epsabs=1e-16, epsrel=1e-13)[0]
        return complex(re, im) + fa * math.log((d - a) / a)
    re = integrate.quad(lambda x: (f(x) / (x - a)).real, 0, d, epsabs=1e-16, epsrel=1e-13)[0]
    im = integrate.quad(lambda x: (f(x) / (x - a)).imag, 0, d, epsabs=1e-16, epsrel=1e-13)[0]
    return complex(re, im)


def mordell_I_e(R: int, alpha, rho, d: float, w: complex, tp: TruncationParams = DEFAULT_TP) -> complex:
    """Nonprincipal part e^{2 pi d w}/(2 pi i) sum phase/a PV int_d^inf ..., via the shift x -> x + d.

    Each term becomes P(a - d, w) - d / (2 pi w a (a - d)), with P the PV kernel.
    """
    _check_split(R, d)
    rho = Fraction(rho)
    w = complex(w)
    if d == 0:
        return mordell_I(R, alpha, rho, float(rho) + 1j * w, tp)
    c = 2 * math.pi * w

    def kernel(a):
        b = a - d
        return pv_kernel(b, w) - d / (c * a * b)

    # (a - d)^{-p} = a^{-p} sum_i C(p+i-1, i) (d/a)^i, in u-units a = u1 u2 / R
    order = _TAIL_ORDER
    coefs: dict[int, complex] = {}
    for m in range(2, order + 2):
        acc = 0j
        for p in range(2, m + 1):
            i = m - p
            acc += -math.factorial(p - 1) / c ** p * math.comb(m - 1, i) * d ** i
        acc += -d ** (m - 1) / c
        coefs[m] = acc * R ** m
    total = _lattice_pv_sum(R, alpha, rho, w, tp, kernel, coefs)
    return total / (2j * math.pi)


# --- transformation law ----------------------------------------------------

def _check_frame(h: int, k: int) -> TransformFrame:
    if k < 1 or not 0 <= h < k or math.gcd(h, k) != 1:
        raise DomainError(f"need 0 <= h < k with gcd(h, k) = 1, got ({h}, {k})")
    return TransformFrame.of(h, k)


def theorem_1_1_sides(R: int, r: int, h: int, k: int, z: complex, tp: TruncationParams = DEFAULT_TP):
    """Both sides of the transformation of F_{R,r}(h/k + i z/k^2), returned as (lhs, rhs)."""
    check_residue_class(R, r)
    frame = _check_frame(h, k)
    z = complex(z)
    if not z.real > 0:
        raise DomainError("need Re(z) > 0")
    tau = h / k + 1j * z / k ** 2
    if tau.imag < 0.05:
        raise DomainError("Im(h/k + iz/k^2) below 0.05: Lambert series too slow for this check")
    lhs = eisenstein_F(R, r, 1, tau, tp)
    consts = constants_ABC(R, r, frame)
    rho = Fraction(frame.hp, k)
    tau_prime = frame.hp / k + 1j / z
    theta = 0j
    for a1 in range(R):
        for a2 in range(R):
            psi = weil_multiplier(R, r, frame, (a1, a2))
            if abs(psi) < 1e-15:
                continue
            theta += psi * (indef_theta_f(LatticeShift(R, (a1, a2)), tau_prime, tp) + mordell_I(R, (a1, a2), rho, tau_prime, tp))
    rhs = -consts.C * cmath.log(z) / z + consts.A / z + consts.B + 1j * k / z * theta
    return lhs, rhs


def verify_theorem_1_1(R: int, r: int, h: int, k: int, z: complex, tp: TruncationParams = DEFAULT_TP) -> float:
    lhs, rhs = theorem_1_1_sides(R, r, h, k, z, tp)
    return abs(lhs - rhs)


def antisymmetric_transform_residual(R: int, r: int, h: int, k: int, z: complex, tp: TruncationParams = DEFAULT_TP) -> float:
    """Transformation of F_{R,r} - F_{R,R-r} using f alone (no Mordell terms, no log term)."""
    frame = _check_frame(h, k)
    z = complex(z)
    tau = h / k + 1j * z / k ** 2
    lhs = eisenstein_F(R, r, 1, tau, tp) - eisenstein_F(R, R - r, 1, tau, tp)
    c1, c2 = constants_ABC(R, r, frame), constants_ABC(R, R - r, frame)
    tau_prime = frame.hp / k + 1j / z
    theta = 0j
    for a1 in range(R):
        for a2 in range(R):
            dpsi = weil_multiplier(R, r, frame, (a1, a2)) - weil_multiplier(R, R - r, frame, (a1, a2))
            if abs(dpsi) < 1e-15:
                continue
            theta += dpsi * indef_theta_f(LatticeShift(R, (a1, a2)), tau_prime, tp)
    rhs = (
        -(c1.C - c2.C) * cmath.log(z) / z + (c1.A - c2.A) / z + (c1.B - c2.B) + 1j * k / z * theta
    )
    return abs(lhs - rhs)


# --- Euler-Maclaurin / Mordell identity ------------------------------------

def prop_3_1_sides(k: int, nu: int, alpha, t: float, tp: TruncationParams = DEFAULT_TP):
    """Both sides of the identity for sum_{m>=0} 1/(zeta_k^{-nu} e^{(m+alpha) t} - 1)."""
    alpha = Fraction(alpha)
    if k < 1 or not 0 < alpha <= 1 or t <= 0:
        raise DomainError("need k >= 1, alpha in (0, 1], t > 0")
    divisible = nu % k == 0
    if not divisible and alpha == 1:
        raise DomainError("alpha = 1 is excluded when k does not divide nu")
    zeta_inv = cmath.exp(-2j * math.pi * (nu % k) / k)
    a = float(alpha)
    lhs = 0j
    m = 0
    while True:
        term = 1 / (zeta_inv * math.exp((m + a) * t) - 1)
        lhs += term
        if abs(term) < 1e-18 * max(1.0, abs(lhs)):
            break
        m += 1

    x = Fraction(nu, k)
    if divisible:
        head = -(math.log(t) + digamma_rational(alpha)) / t + (a - 0.5) / 2
    else:
        xr = float(x - math.floor(x))
        head = -(1j * math.pi * float(sawtooth(x)) + 0.5 * math.log(4 * math.sin(math.pi * xr) ** 2)) / t
        head += 0.5 * (a - 0.5) * (1 - 1j / math.tan(math.pi * xr))

    # lattice: n1 in Z, n2 in Z + nu/k; kernel in a = n1 n2, w = 2 pi / t
    w = 2 * math.pi / t
    q = alpha.denominator
    N = tp.lattice_radius
    ax1 = Axis(0, 1, N, q)
    ax2 = Axis(nu % k, k, k * N, k)
    u1, u2 = ax1.box(), ax2.box()
    phase_cls = np.exp(-2j * np.pi * (alpha.numerator * ax1.classes() % q) / q)[:, None] * np.ones(len(ax2.classes()))
    n1 = u1.astype(float)
    prod = np.outer(n1, u2.astype(float) / k)
    same = np.sign(np.outer(np.sign(n1), np.sign(u2))) > 0
    sgn_sum = np.add.outer(np.sign(n1), np.sign(u2).astype(float))
    kern = pv_kernel(prod, w) + 0.5j * np.pi * sgn_sum * np.where(same, np.exp(-2 * np.pi * w * np.abs(prod)), 0)
    box = np.sum(phase_cls[np.ix_(class_index(u1, ax1), class_index(u2, ax2))] * kern)
    tail = tail_sum(ax1, ax2, phase_cls, _pv_tail_coefs(w, 1.0 / k))
    rhs = head + (complex(box) + tail) / t
    return lhs, rhs


def prop_3_1_check(k: int, nu: int, alpha, t: float, tp: TruncationParams = DEFAULT_TP) -> float:
    lhs, rhs = prop_3_1_sides(k, nu, alpha, t, tp)
    return abs(lhs - rhs)


# --- nonprincipal part of f ------------------------------------------------

def indef_nonprincipal(R: int, alpha, hp: int, k: int, d: float, w: complex, tp: TruncationParams = DEFAULT_TP) -> complex:
    """e^{-2 pi i d tau} f_{R,alpha}(tau) minus its two growing exponentials, tau = h'/k + i w."""
    a1, a2 = alpha[0] % R, alpha[1] % R
    w = complex(w)
    tau = hp / k + 1j * w
    val = cmath.exp(-2j * math.pi * d * tau) * indef_theta_f(LatticeShift(R, (a1, a2)), tau, tp)
    shift = w - 1j * hp / k
    if 0 < a1 * a2 < R * d:
        val -= 0.5 * cmath.exp(2 * math.pi * (d - a1 * a2 / R) * shift)
    b = (R - a1) * (R - a2)
    if b < R * d:
        val += 0.5 * cmath.exp(2 * math.pi * (d - b / R) * shift)
    return val
