"""Circle-method expansion of the parts statistic T_{R,r}(n).

The expansion is a sum over denominators k <= sqrt(n) of five families of
terms: a logarithmic Bessel term, two constant-term Bessel series, an
indefinite-theta series that only exists for R > 24, and a principal-value
integral against the meromorphic kernel Phi_{R,k,lambda}.

Terms whose Bessel argument exceeds ``_DOUBLE_X_LIMIT`` are evaluated with
mpmath at a working precision large enough to resolve the final sum to well
below one unit. Everything else runs in double precision, with the kernel
integrals vectorized over all (lambda_1, lambda_2) in [0, Rk)^2 at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate
from scipy.special import exp1, expi, zeta

from .errors import ContractError, PoleError, check_not_multiple_of_24
from .lattice import Axis, tail_sum
from .partitions import DomainError, check_residue_class, exact_parts_count
from .qseries import DEFAULT_TP, TruncationParams
from .specfun import (
    bessel_I_3half,
    bessel_I_half,
    bessel_I_order_derivative_half,
)
from .transform import (
    TransformFrame,
    constants_ABC,
    frames,
    nu_hk,
    nu_hk_turns,
    root_of_unity,
    weil_multiplier,
    weil_multiplier_terms,
)

# Bessel arguments above this go through mpmath; e^30 * 1e-16 is still far below 1
_DOUBLE_X_LIMIT = 30.0
_GUARD_DIGITS = 25
_GL_ORDER = 256


def epsilon_R(R: int) -> Fraction:
    """Half the distance from 1/24 to the nearest point of Z/R."""
    if R < 1:
        raise DomainError("R must be a positive integer")
    check_not_multiple_of_24(R)
    j = round(Fraction(R, 24))
    return abs(Fraction(1, 24) - Fraction(j, R)) / 2


def shifted_index(n: int) -> Fraction:
    """n_s = n - 1/24 as an exact rational."""
    return Fraction(24 * n - 1, 24)


def bessel_argument(n: int, k: int, scale: Fraction = Fraction(1)) -> float:
    """(pi/k) sqrt(2 n_s scale / 3)."""
    return math.pi / k * math.sqrt(2 * float(shifted_index(n) * scale) / 3)


def _working_dps(x: float) -> int | None:
    if x <= _DOUBLE_X_LIMIT:
        return None
    return int(x / math.log(10)) + _GUARD_DIGITS


# --- Kloosterman sums ------------------------------------------------------

def _n_turns(n: int, frame: TransformFrame) -> Fraction:
    """-(h' + 24 n_s h) / (24 k), the phase shared by every kind."""
    return Fraction(-frame.hp - (24 * n - 1) * frame.h, 24 * frame.k)


def kloosterman(
    kind: int,
    R: int,
    r: int,
    n: int,
    k: int,
    alpha=None,
    kappa=None,
    ctx=mpmath.fp,
):
    """Finite sum over h mod k, gcd(h, k) = 1, of multiplier phases times e(-n_s h / k).

    kind 1: nu_{h,k}; kind 2: nu_{h,k} A_{h,k}; kind 3: nu_{h,k} B_{h,k};
    kind 4: the antisymmetrized theta multiplier at alpha (times i);
    kind 5: the theta multiplier at alpha with the lattice phase of R kappa + alpha.
    """
    check_residue_class(R, r)
    if k < 1:
        raise DomainError("k must be positive")
    if kind in (4, 5) and alpha is None:
        raise ContractError(f"kind {kind} needs alpha")
    if kind == 5 and kappa is None:
        raise ContractError("kind 5 needs kappa")
    if kind not in (1, 2, 3, 4, 5):
        raise DomainError(f"kind must be 1..5, got {kind}")
    terms = []
    for frame in frames(k):
        base = _n_turns(n, frame)
        if kind == 1:
            terms.append(root_of_unity(nu_hk_turns(frame) + base, ctx))
        elif kind in (2, 3):
            consts = constants_ABC(R, r, frame, ctx)
            factor = consts.A if kind == 2 else consts.B
            terms.append(factor * root_of_unity(nu_hk_turns(frame) + base, ctx))
        elif kind == 4:
            a1, a2 = alpha
            diff = weil_multiplier(R, r, frame, (a1, a2), ctx) - weil_multiplier(R, r, frame, (R - a1, R - a2), ctx)
            turns = nu_hk_turns(frame) + Fraction(-frame.hp * (R - 24 * a1 * a2), 24 * k * R) + Fraction(
                -(24 * n - 1) * frame.h, 24 * k
            )
            terms.append(diff / 2 * root_of_unity(turns, ctx))
        else:
            lam1, lam2 = R * kappa[0] + alpha[0], R * kappa[1] + alpha[1]
            turns = nu_hk_turns(frame) + Fraction(frame.hp * lam1 * lam2, R * k) + _n_turns(n, frame)
            terms.append(weil_multiplier(R, r, frame, alpha, ctx) * root_of_unity(turns, ctx))
    total = ctx.fsum(terms) if terms else ctx.mpc(0)
    return ctx.mpc(0, 1) * total if kind == 4 else total


def _kloosterman5_matrix(R: int, r: int, n: int, k: int) -> np.ndarray:
    """K^{[5]} for every lambda in [0, Rk)^2 at once, double precision."""
    M = R * k
    lam = np.arange(M, dtype=np.int64)
    prod = np.outer(lam, lam) % M
    alpha_idx = lam % R
    out = np.zeros((M, M), dtype=complex)
    for frame in frames(k):
        psi = np.array(
            [[complex(weil_multiplier(R, r, frame, (a1, a2))) for a2 in range(R)] for a1 in range(R)]
        )
        phi = complex(nu_hk(frame)) * psi
        # turns = h' lam1 lam2 / (R k) - h'/(24k) - (24n-1) h / (24k), over 24 R k
        den = 24 * M
        num = (24 * frame.hp * prod - R * frame.hp - R * (24 * n - 1) * frame.h) % den
        out += phi[np.ix_(alpha_idx, alpha_idx)] * np.exp(2j * np.pi * num / den)
    return out


# --- the kernel Phi ---------------------------------------------------------

@dataclass(frozen=True)
class KernelPole:
    exists: bool
    t_val: Fraction | None = None
    multiplicity: int = 0


def _small_offsets(lam: int, M: int) -> list[int]:
    """Nonzero u = lam (mod M) with |u| < M."""
    rho = lam % M
    return [rho, rho - M] if rho else []


def locate_pole(R: int, k: int, lam) -> KernelPole:
    """The pole of Phi_{R,k,lam} inside (0, 1/24), found by an exact divisor search.

    Poles lie at b = u1 u2 / R with u_i = lam_i (mod Rk). A pole in (0, 1/24)
    needs a positive integer P = u1 u2 < R/24; it is unique because the
    candidates are lam1 lam2 / R + kZ and k >= 1 exceeds the interval length.
    """
    check_not_multiple_of_24(R)
    if k < 1 or R < 1:
        raise DomainError("R and k must be positive")
    M = R * k
    l1, l2 = lam[0] % M, lam[1] % M
    base = Fraction(l1 * l2, R)
    # the one representative of base + kZ in (0, 1/24), if any
    cand = base - k * math.floor(base / k)
    if not 0 < cand < Fraction(1, 24):
        return KernelPole(False)
    P = cand * R
    if P.denominator != 1:
        return KernelPole(False)
    P = int(P)
    count = 0
    for d in range(1, P + 1):
        if P % d:
            continue
        for u1 in (d, -d):
            u2 = P // u1
            if (u1 - l1) % M == 0 and (u2 - l2) % M == 0:
                count += 1
    if count == 0:
        return KernelPole(False)
    return KernelPole(True, cand, count)


def kernel_phi(R: int, k: int, lam, w: complex, tp: TruncationParams = DEFAULT_TP) -> complex:
    """sum over n in Z^2 + lam/(Rk), n1 n2 != 0, of w / (b (w - b)), b = R k^2 n1 n2."""
    check_not_multiple_of_24(R)
    w = complex(w)
    M = R * k
    ax1 = Axis(lam[0] % M, M, M * tp.lattice_radius, M)
    ax2 = Axis(lam[1] % M, M, M * tp.lattice_radius, M)
    u1, u2 = ax1.box(), ax2.box()
    P = np.outer(u1, u2)
    hits = np.isclose(P / R, w.real, rtol=0, atol=1e-15) & (abs(w.imag) < 1e-15)
    if hits.any():
        raise PoleError(f"w = {w} is a pole of the kernel")
    if w == 0:
        return 0j
    b = P.astype(float) / R
    box = np.sum(w / (b * (w - b)))
    # outside the box |b| >= k * radius, so the expansion in w / b converges
    order = 2 + int(math.ceil(18 / max(math.log10(k * tp.lattice_radius / max(abs(w), 1e-300)), 0.5)))
    coefs = {m: -(w ** (m - 1)) * R ** m for m in range(2, min(order, 40) + 2)}
    return complex(box) + tail_sum(ax1, ax2, np.ones((1, 1)), coefs)


# --- PV kernel integrals -----------------------------------------------------
#
# With s = sqrt(1 - 24 t) the Bessel weight (1 - 24 t)^{1/4} I_{1/2}(x sqrt(1 - 24 t))
# becomes sqrt(2/(pi x)) sinh(x s) and dt = -(s/12) ds. The kernel splits
# exactly into at most four "small" pairs (|u_i| < Rk), each
# 1/b + 24/(s_b^2 - s^2) with s_b^2 = 1 - 24 b, and a remainder with |b| >= k
# whose expansion -sum_m coef_m t^{m-1} converges on all of [0, 1/24].


def _gl_unit(order: int = _GL_ORDER):
    x, w = leggauss(order)
    return (x + 1) / 2, w / 2


_GL_S, _GL_W = _gl_unit()


def _series_order(k: int, digits: float) -> int:
    return int(math.ceil(digits / math.log10(24 * k))) + 2


def _scaled_e1(v: np.ndarray) -> np.ndarray:
    out = np.empty_like(v)
    small = v <= 50
    out[small] = exp1(v[small]) * np.exp(v[small])
    vb = v[~small]
    acc, term = np.zeros_like(vb), 1 / vb
    for j in range(1, 40):
        acc += term
        term = -term * j / vb
    out[~small] = acc
    return out


def _scaled_ei(v: np.ndarray) -> np.ndarray:
    out = np.empty_like(v)
    small = v <= 50
    out[small] = expi(v[small]) * np.exp(-v[small])
    vb = v[~small]
    acc, term = np.zeros_like(vb), 1 / vb
    for j in range(1, 40):
        acc += term
        term = term * j / vb
    out[~small] = acc
    return out


def _k_fp(y_minus_v: float, v: np.ndarray) -> np.ndarray:
    """-(e^y E1(v) + e^{-y} Ei(v))/2 with y - v fixed, overflow-free."""
    d = y_minus_v
    return -(math.exp(d) * _scaled_e1(v) + math.exp(-d) * _scaled_ei(v)) / 2


def _pair_integrals_fp(P: np.ndarray, R: int, x: float) -> np.ndarray:
    """int_0^1 [s sinh(xs)/(12 b) + 2 s sinh(xs)/(s_b^2 - s^2)] ds for b = P/R (PV at s_b)."""
    b = P.astype(float) / R
    c2 = 1 - 24 * b
    out = np.empty(b.shape)
    pv = (c2 > 0) & (c2 < 1)
    if pv.any():
        # 2s/(c^2 - s^2) = 1/(c - s) + 1/(-c - s); each piece is a K-combination
        q = math.cosh(x) / x - math.sinh(x) / x ** 2
        c = np.sqrt(c2[pv])
        out[pv] = q / (12 * b[pv]) + _k_fp(-x, x * (1 - c)) + _k_fp(-x, x * (1 + c))
    smooth = ~pv
    if smooth.any():
        # since s_b^2 + 24 b = 1 the two pieces combine into one cancellation-free integrand
        s, w = _GL_S[:, None], _GL_W[:, None]
        bb, cc = b[smooth][None, :], c2[smooth][None, :]
        vals = s * np.sinh(x * s) * (1 - s * s) / (12 * bb * (cc - s * s))
        out[smooth] = np.sum(w * vals, axis=0)
    return out


def _moments_fp(x: float, order: int) -> np.ndarray:
    """M_m for m = 2 .. order + 1, weight sqrt(2/(pi x)) / 12 included."""
    s, w = _GL_S, _GL_W
    base = s * np.sinh(x * s) * w
    t = (1 - s * s) / 24
    pref = math.sqrt(2 / (math.pi * x)) / 12
    return np.array([pref * np.sum(base * t ** (m - 1)) for m in range(2, order + 2)])


def _axis_sums_fp(R: int, k: int, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Per residue rho in [0, Rk): small and large power sums of (k sqrt(R) n)^{-m}, n in Z + rho/(Rk).

    The product of two axis sums carries (R k^2 n1 n2)^{-m}, the expansion variable of Phi.
    """
    M = R * k
    rho = np.arange(M)
    a = rho / M
    scale = k * math.sqrt(R)
    Zs = np.zeros((M, order))
    Zl = np.zeros((M, order))
    nz = rho != 0
    for i, m in enumerate(range(2, order + 2)):
        Zs[nz, i] = (scale * a[nz]) ** (-m) + (scale * (a[nz] - 1)) ** (-m)
        Zl[nz, i] = (zeta(m, a[nz] + 1) + (-1) ** m * zeta(m, 2 - a[nz])) / scale ** m
        Zl[~nz, i] = (1 + (-1) ** m) * zeta(m) / scale ** m
    return Zs, Zl


def _weighted_kernel_integral_fp(R: int, k: int, x: float, weights: np.ndarray) -> complex:
    """sum over lambda in [0,Rk)^2 of weights[lambda] * PV int Phi_{R,k,lambda}(t) g(t) dt."""
    M = R * k
    order = _series_order(k, 18)
    mom = _moments_fp(x, order)
    Zs, Zl = _axis_sums_fp(R, k, order)
    regular = 0j
    for i in range(order):
        zs, zl = Zs[:, i], Zl[:, i]
        regular -= mom[i] * (zs @ weights @ zl + zl @ weights @ zs + zl @ weights @ zl)
    rho = np.arange(M)
    nz = rho != 0
    offsets = [np.where(nz, rho, 0), np.where(nz, rho - M, 0)]
    small = 0j
    pref = math.sqrt(2 / (math.pi * x))
    for u1 in offsets:
        for u2 in offsets:
            P = np.outer(u1, u2)
            mask = np.outer(nz, nz)
            uniq, inv = np.unique(P[mask], return_inverse=True)
            vals = _pair_integrals_fp(uniq, R, x)[inv]
            small += np.sum(weights[mask] * vals)
    return regular + pref * small


class _PreciseKernel:
    """The same kernel integrals in mpmath at the ambient working precision."""

    def __init__(self, R: int, k: int, x):
        self.R, self.k, self.x = R, k, mpmath.mpf(x)
        digits = mpmath.mp.dps
        self.order = _series_order(k, digits)
        self.pref = mpmath.sqrt(2 / (mpmath.pi * self.x))
        X = self.x
        self.moments = [
            self.pref / 12 * mpmath.quad(lambda s: s * mpmath.sinh(X * s) * ((1 - s * s) / 24) ** (m - 1), [0, 0.5, 1])
            for m in range(2, self.order + 2)
        ]
        self._axis: dict[int, tuple[list, list]] = {}
        self._pair: dict[int, mpmath.mpf] = {}

    def axis(self, rho: int):
        if rho not in self._axis:
            M = self.R * self.k
            scale = self.k * mpmath.sqrt(self.R)
            zs, zl = [], []
            a = mpmath.mpf(rho) / M
            for m in range(2, self.order + 2):
                if rho == 0:
                    zs.append(mpmath.mpf(0))
                    zl.append((1 + (-1) ** m) * mpmath.zeta(m) / scale ** m)
                else:
                    zs.append((scale * a) ** (-m) + (scale * (a - 1)) ** (-m))
                    zl.append((mpmath.zeta(m, a + 1) + (-1) ** m * mpmath.zeta(m, 2 - a)) / scale ** m)
            self._axis[rho] = (zs, zl)
        return self._axis[rho]

    def pair(self, P: int):
        if P not in self._pair:
            self._pair[P] = self._pair_value(P)
        return self._pair[P]

    def _pair_value(self, P: int):
        x = self.x
        b = mpmath.mpf(P) / self.R
        c2 = 1 - 24 * b
        q = mpmath.cosh(x) / x - mpmath.sinh(x) / x ** 2
        base = q / (12 * b)

        def kfun(y, v):
            return -(mpmath.exp(y) * mpmath.e1(v) + mpmath.exp(-y) * mpmath.ei(v)) / 2

        if c2 > 0:
            c = mpmath.sqrt(c2)
            if c < 1:
                return base + kfun(-x * c, x * (1 - c)) + kfun(x * c, x * (1 + c))
            return base + kfun(x * c, x * (1 + c)) - kfun(x * c, x * (c - 1))
        # s_b imaginary: no pole on [0, 1]; the sinh/cosh-integral form along a path off the cut
        c = mpmath.mpc(0, mpmath.sqrt(-c2))

        def g(cc):
            return mpmath.sinh(x * cc) * (mpmath.chi(x * cc) - mpmath.chi(x * (cc - 1))) - mpmath.cosh(x * cc) * (
                mpmath.shi(x * cc) - mpmath.shi(x * (cc - 1))
            )

        return base + mpmath.re(g(c) + g(-c))

    def value(self, lam) -> mpmath.mpf:
        M = self.R * self.k
        r1, r2 = lam[0] % M, lam[1] % M
        zs1, zl1 = self.axis(r1)
        zs2, zl2 = self.axis(r2)
        regular = -mpmath.fsum(
            mom * (a * d + b_ * c + b_ * d) for mom, a, b_, c, d in zip(self.moments, zs1, zl1, zs2, zl2)
        )
        small = mpmath.fsum(self.pair(u1 * u2) for u1 in _small_offsets(r1, M) for u2 in _small_offsets(r2, M))
        return regular + self.pref * small


def pv_kernel_integral(R: int, k: int, lam, n: int, tp: TruncationParams = DEFAULT_TP) -> float:
    """PV int_0^{1/24} Phi_{R,k,lam}(t) (1 - 24t)^{1/4} I_{1/2}((pi/k) sqrt(2 n_s (1 - 24t)/3)) dt."""
    check_not_multiple_of_24(R)
    if n < 1 or k < 1:
        raise DomainError("n and k must be positive")
    x = bessel_argument(n, k)
    M = R * k
    weights = np.zeros((M, M), dtype=complex)
    weights[lam[0] % M, lam[1] % M] = 1
    return float(_weighted_kernel_integral_fp(R, k, x, weights).real)


def pv_kernel_integral_precise(R: int, k: int, lam, n: int, dps: int = 40):
    check_not_multiple_of_24(R)
    with mpmath.workdps(dps):
        return _PreciseKernel(R, k, mpmath.pi / k * mpmath.sqrt(2 * _mpq(shifted_index(n)) / 3)).value(lam)


def _bessel_weight(x: float, t: float) -> float:
    s = math.sqrt(max(1 - 24 * t, 0.0))
    return math.sqrt(2 / (math.pi * x)) * math.sinh(x * s)


def pv_kernel_integral_quadrature(
    R: int, k: int, lam, n: int, tp: TruncationParams = DEFAULT_TP, substituted: bool = False
) -> float:
    """Independent t-space evaluation with the lattice kernel and pole subtraction.

    Around a pole t0 the window [t0 - eps_R, t0 + eps_R] is integrated with
    c g(t0) / (t - t0) removed, whose PV over a symmetric window is zero.
    With ``substituted`` the integrand is Phi(1/24 - t) (24 t)^{1/4} I_{1/2}(4 pi sqrt(n_s t)/k).
    """
    check_not_multiple_of_24(R)
    x = bessel_argument(n, k)
    pole = locate_pole(R, k, lam)
    eps = float(epsilon_R(R))
    ns = float(shifted_index(n))

    def phi(t):
        return kernel_phi(R, k, lam, t, tp).real

    if substituted:
        def f(t):
            return phi(1 / 24 - t) * (24 * t) ** 0.25 * bessel_I_half(4 * math.pi * math.sqrt(ns * t) / k)

        t0 = None if not pole.exists else 1 / 24 - float(pole.t_val)

        def g(t):
            return (24 * t) ** 0.25 * bessel_I_half(4 * math.pi * math.sqrt(ns * t) / k)
        sign = -1.0  # residue flips under t -> 1/24 - t
    else:
        def f(t):
            return phi(t) * _bessel_weight(x, t)

        t0 = None if not pole.exists else float(pole.t_val)
        g = lambda t: _bessel_weight(x, t)
        sign = 1.0

    def quad(fn, lo, hi):
        return integrate.quad(fn, lo, hi, epsabs=0, epsrel=1e-11, limit=tp.quad_panels * 4)[0]

    if t0 is None:
        return quad(f, 0, 1 / 24)
    c = sign * pole.multiplicity
    g0 = g(t0)
    total = quad(f, 0, t0 - eps) + quad(f, t0 + eps, 1 / 24)
    sub = lambda t: f(t) - c * g0 / (t - t0)
    return total + quad(sub, t0 - eps, t0) + quad(sub, t0, t0 + eps)


# --- the five component series ------------------------------------------------

def _mpq(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def _real(z, scale, label: str):
    """Drop an imaginary part that must vanish, after checking it does."""
    im = abs(complex(z).imag) if not isinstance(z, mpmath.mpc) else abs(z.imag)
    if im > 1e-9 * max(abs(scale), 1.0):
        raise ArithmeticError(f"{label}: imaginary residue {im} is not negligible")
    return z.real


def _component_terms(R: int, r: int, n: int, k: int, dps: int | None) -> list:
    """The five k-th summands before the (24 n_s)^{-1/4} prefactor."""
    ns = shifted_index(n)
    if dps is None:
        ctx = mpmath.fp
        x = bessel_argument(n, k)
        i_half, i_3half = bessel_I_half(x), bessel_I_3half(x)
        order_der = bessel_I_order_derivative_half(x)
        sqrt_ns = math.sqrt(float(ns))
        log = math.log
        pi = math.pi
    else:
        ctx = mpmath.mp
        x = mpmath.pi / k * mpmath.sqrt(2 * _mpq(ns) / 3)
        i_half = mpmath.sqrt(2 / (mpmath.pi * x)) * mpmath.sinh(x)
        i_3half = mpmath.sqrt(2 / (mpmath.pi * x)) * (mpmath.cosh(x) - mpmath.sinh(x) / x)
        order_der = -(mpmath.ei(2 * x) * mpmath.exp(-x) + mpmath.e1(2 * x) * mpmath.exp(x)) / mpmath.sqrt(
            2 * mpmath.pi * x
        )
        sqrt_ns = mpmath.sqrt(_mpq(ns))
        log = mpmath.log
        pi = mpmath.pi

    scale = i_half
    out = [ctx.mpf(0)] * 5
    if r % math.gcd(R, k) == 0:
        lcm = R * k // math.gcd(R, k)
        k1 = kloosterman(1, R, r, n, k, ctx=ctx)
        bracket = log(2 * ctx.sqrt(6) * sqrt_ns / k) * i_half - order_der
        out[0] = _real(k1 * bracket / lcm, scale, "log-Bessel series")
    k2 = kloosterman(2, R, r, n, k, ctx=ctx)
    out[1] = _real(2 * pi * k2 / k ** 2 * i_half, scale, "A-series")
    k3 = kloosterman(3, R, r, n, k, ctx=ctx)
    out[2] = _real(pi / (ctx.sqrt(6) * sqrt_ns) * k3 / k * i_3half, scale, "B-series")
    out[3] = _theta_series_term(R, r, n, k, ctx)
    out[4] = _kernel_series_term(R, r, n, k, ctx, x)
    return out


def _theta_series_term(R: int, r: int, n: int, k: int, ctx):
    total = ctx.mpf(0)
    ns = shifted_index(n)
    for a1 in range(1, R):
        for a2 in range(1, R):
            if 24 * a1 * a2 >= R:
                continue
            shrink = Fraction(R - 24 * a1 * a2, R)
            if ctx is mpmath.fp:
                y = bessel_argument(n, k, shrink)
                ib = bessel_I_half(y)
            else:
                y = mpmath.pi / k * mpmath.sqrt(2 * _mpq(ns * shrink) / 3)
                ib = mpmath.sqrt(2 / (mpmath.pi * y)) * mpmath.sinh(y)
            k4 = kloosterman(4, R, r, n, k, alpha=(a1, a2), ctx=ctx)
            root = float(shrink) ** 0.25 if ctx is mpmath.fp else _mpq(shrink) ** mpmath.mpf(0.25)
            term = 2 * ctx.pi * root * k4 / k * ib
            total += _real(term, ib, "theta series")
    return total


def _kernel_series_term(R: int, r: int, n: int, k: int, ctx, x):
    M = R * k
    if ctx is mpmath.fp:
        weights = _kloosterman5_matrix(R, r, n, k)
        val = _weighted_kernel_integral_fp(R, k, x, weights) / k
        return _real(val, math.exp(x), "kernel series")
    kern = _PreciseKernel(R, k, x)
    terms = []
    for l1 in range(M):
        for l2 in range(M):
            alpha, kappa = (l1 % R, l2 % R), (l1 // R, l2 // R)
            k5 = kloosterman(5, R, r, n, k, alpha=alpha, kappa=kappa, ctx=mpmath.mp)
            if k5 == 0:
                continue
            terms.append(k5 * kern.value((l1, l2)))
    val = mpmath.fsum(terms) / k
    return _real(val, mpmath.exp(x), "kernel series")


def component_series(j: int, R: int, r: int, n: int):
    """The j-th of the five series, summed over k = 1 .. floor(sqrt(n)), prefactor included."""
    if j not in (1, 2, 3, 4, 5):
        raise DomainError("component index must be 1..5")
    return theorem_1_2_eval(R, r, n, attach_exact=False).components[j - 1]


@dataclass
class ComponentBreakdown:
    n: int
    t1: mpmath.mpf
    t2: mpmath.mpf
    t3: mpmath.mpf
    t4: mpmath.mpf
    t5: mpmath.mpf
    sum: mpmath.mpf
    exact: int | None = None
    rel_error: float | None = None
    abs_error: mpmath.mpf | None = None
    per_k: list = field(default_factory=list, repr=False)

    @property
    def components(self) -> tuple:
        return (self.t1, self.t2, self.t3, self.t4, self.t5)


def theorem_1_2_eval(R: int, r: int, n: int, attach_exact: bool = True) -> ComponentBreakdown:
    """Evaluate the five-series expansion of T_{R,r}(n) and compare it with the exact count."""
    check_residue_class(R, r)
    check_not_multiple_of_24(R)
    if n < 1:
        raise DomainError("n must be positive")
    N = math.isqrt(n)
    top = _working_dps(bessel_argument(n, 1)) or 20
    with mpmath.workdps(top):
        totals = [mpmath.mpf(0)] * 5
        per_k = []
        for k in range(1, N + 1):
            dps = _working_dps(bessel_argument(n, k))
            if dps is None:
                terms = [mpmath.mpf(t) for t in _component_terms(R, r, n, k, None)]
            else:
                with mpmath.workdps(dps):
                    terms = [+t for t in _component_terms(R, r, n, k, dps)]
            per_k.append(terms)
            totals = [a + b for a, b in zip(totals, terms)]
        pref = (24 * _mpq(shifted_index(n))) ** mpmath.mpf(-0.25)
        comps = [pref * t for t in totals]
        total = mpmath.fsum(comps)
        out = ComponentBreakdown(n, *comps, sum=total, per_k=per_k)
        if attach_exact:
            exact = exact_parts_count(R, r, n).t[n]
            out.exact = exact
            if exact > 0:
                err = abs(total - exact)
                out.abs_error = err
                out.rel_error = float(err / exact)
    return out
