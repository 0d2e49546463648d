"""Arithmetic of the cusp frame h/k: Farey complements, Dedekind sums, the eta
multiplier, the Weil multiplier of the (0, R; R, 0) lattice, and the constants
of the transformation law for F_{R,r}.

Every root-of-unity phase is reduced as an exact rational before it becomes a
float. Scalar evaluators take an mpmath context: ``mpmath.fp`` for double
precision (the default) or ``mpmath.mp`` for the high-precision path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath

from .partitions import DomainError, check_residue_class
from .specfun import digamma_rational, sawtooth


def farey_complement(h: int, k: int) -> int:
    """The unique h' in [0, k) with h h' = -1 (mod k); 0 when k = 1."""
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    if not 0 <= h < k:
        raise DomainError(f"need 0 <= h < k, got h={h}, k={k}")
    if math.gcd(h, k) != 1:
        raise DomainError(f"gcd({h}, {k}) != 1")
    if k == 1:
        return 0
    return (-pow(h, -1, k)) % k


@dataclass(frozen=True)
class TransformFrame:
    h: int
    k: int
    hp: int

    @classmethod
    def of(cls, h: int, k: int) -> "TransformFrame":
        return cls(h, k, farey_complement(h, k))

    def __post_init__(self):
        if math.gcd(self.h, self.k) != 1 or (self.h * self.hp + 1) % self.k:
            raise DomainError(f"invalid frame {self}")

    @property
    def matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """M_{h,k}, mapping h'/k + i/z to h/k + iz/k^2."""
        h, k, hp = self.h, self.k, self.hp
        return ((h, -(h * hp + 1) // k), (k, -hp))


def frames(k: int) -> list[TransformFrame]:
    return [TransformFrame.of(h, k) for h in range(k) if math.gcd(h, k) == 1]


def dedekind_sum(h: int, k: int) -> Fraction:
    """s(h, k) = sum_{mu=1}^{k-1} ((mu/k)) ((h mu/k)), exact."""
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    if math.gcd(h, k) != 1:
        raise DomainError(f"gcd({h}, {k}) != 1")
    return _dedekind_sum(h % k, k)


@lru_cache(maxsize=4096)
def _dedekind_sum(h: int, k: int) -> Fraction:
    # reciprocity keeps this O(log k) instead of the O(k) defining sum
    if k == 1:
        return Fraction(0)
    if h == 0:
        return Fraction(0)
    if h == 1:
        return Fraction((k - 1) * (k - 2), 12 * k)
    return (
        Fraction(-1, 4)
        + Fraction(h * h + k * k + 1, 12 * h * k)
        - _dedekind_sum(k % h, h)
    )


def dedekind_sum_direct(h: int, k: int) -> Fraction:
    """The defining O(k) sum; independent check on the reciprocity route."""
    return sum(
        (sawtooth(Fraction(mu, k)) * sawtooth(Fraction(h * mu, k)) for mu in range(1, k)),
        Fraction(0),
    )


def _rat(ctx, q: Fraction):
    q = Fraction(q)
    return ctx.mpf(q.numerator) / q.denominator


def _reduce_turns(q: Fraction) -> Fraction:
    """q mod 1, as an exact rational in [0, 1)."""
    return q - math.floor(q)


def eta_multiplier_turns(frame: TransformFrame) -> Fraction:
    """nu_eta(M_{h,k}) = exp(2 pi i * turns), turns exact in [0, 1).

    Convention for c > 0: nu_eta = exp(pi i ((a + d)/(12 c) - s(d, c) - 1/4)).
    """
    (a, _), (c, d) = frame.matrix
    half_turns = Fraction(a + d, 12 * c) - dedekind_sum(d, c) - Fraction(1, 4)
    return _reduce_turns(half_turns / 2)


def nu_hk_turns(frame: TransformFrame) -> Fraction:
    """nu_{h,k} = e^{-pi i/4} / nu_eta(M_{h,k}) as exact turns."""
    return _reduce_turns(Fraction(-1, 8) - eta_multiplier_turns(frame))


def root_of_unity(turns: Fraction, ctx=mpmath.fp):
    """exp(2 pi i * turns) after exact reduction mod 1."""
    t = _reduce_turns(Fraction(turns))
    if ctx is mpmath.fp:
        return complex(math.cos(2 * math.pi * t), math.sin(2 * math.pi * t)) if t else 1 + 0j
    return ctx.expjpi(2 * _rat(ctx, t))


def eta_multiplier(frame: TransformFrame, ctx=mpmath.fp):
    return root_of_unity(eta_multiplier_turns(frame), ctx)


def nu_hk(frame: TransformFrame, ctx=mpmath.fp):
    return root_of_unity(nu_hk_turns(frame), ctx)


# --- Weil multiplier -------------------------------------------------------

def weil_multiplier_terms(R: int, r: int, frame: TransformFrame, alpha) -> list[Fraction]:
    """Phases (in turns) of psi_{R,r,h,k}(alpha); psi = sum(e(turns)) / R.

    The nu_1 sum of the defining double sum is a complete character sum and
    collapses to k * [k | h(R nu_2 + r) - alpha_2]; only surviving nu_2 remain.
    """
    h, k, hp = frame.h, frame.k, frame.hp
    a1, a2 = alpha[0] % R, alpha[1] % R
    base = Fraction(-hp * a1 * a2, R * k)
    return [
        base + Fraction(-a1 * (R * nu2 + r), R * k)
        for nu2 in range(k)
        if (h * (R * nu2 + r) - a2) % k == 0
    ]


def weil_multiplier(R: int, r: int, frame: TransformFrame, alpha, ctx=mpmath.fp):
    check_residue_class(R, r)
    terms = weil_multiplier_terms(R, r, frame, alpha)
    total = ctx.fsum(root_of_unity(t, ctx) for t in terms) if terms else ctx.mpc(0)
    return total / R


def weil_multiplier_double_sum(R: int, r: int, frame: TransformFrame, alpha) -> complex:
    """psi by the full double sum over nu_1, nu_2 mod k (oracle for the collapsed form)."""
    h, k, hp = frame.h, frame.k, frame.hp
    a1, a2 = alpha
    total = 0j
    for nu1 in range(k):
        for nu2 in range(k):
            num = R * h * nu1 * (R * nu2 + r) - R * a2 * nu1 - a1 * (R * nu2 + r)
            total += root_of_unity(Fraction(num, R * k))
    return root_of_unity(Fraction(-hp * a1 * a2, R * k)) * total / (R * k)


def phi_multiplier(R: int, r: int, frame: TransformFrame, alpha, ctx=mpmath.fp):
    """nu_{h,k} * psi_{R,r,h,k}(alpha)."""
    return nu_hk(frame, ctx) * weil_multiplier(R, r, frame, alpha, ctx)


# --- constants of the transformation law -----------------------------------

@dataclass(frozen=True)
class TransformConstants:
    A: complex
    B: complex
    C: float


def constant_C(R: int, r: int, k: int, ctx=mpmath.fp):
    g = math.gcd(R, k)
    if r % g:
        return ctx.mpf(0)
    lcm = R * k // g
    return ctx.mpf(k * k) / (2 * ctx.pi * lcm)


def _digamma(a: Fraction, ctx):
    if ctx is mpmath.fp:
        return digamma_rational(a)
    return ctx.digamma(_rat(ctx, a))


def constants_ABC(R: int, r: int, frame: TransformFrame, ctx=mpmath.fp) -> TransformConstants:
    check_residue_class(R, r)
    h, k = frame.h, frame.k
    pi = ctx.pi
    a_terms = []
    b_terms = []
    for ell in range(k):
        m = R * ell + r
        x = Fraction(h * m, k)
        shift = _rat(ctx, Fraction(m, R * k) - Fraction(1, 2))
        term = ctx.mpc(0, 1) * pi * _rat(ctx, sawtooth(x))
        if m % k:
            # reduce h m / k mod 1 first so sin and cot see a small argument
            xr = _rat(ctx, _reduce_turns(x))
            s = ctx.sinpi(xr)
            term += ctx.log(4 * s * s) / 2
            b_terms.append(shift * (1 - ctx.mpc(0, 1) * ctx.cot(pi * xr)))
        else:
            term += ctx.log(2 * pi * R / k) + _digamma(Fraction(m, R * k), ctx)
            b_terms.append(shift)
        a_terms.append(term)
    A = -ctx.mpf(k) / (2 * pi * R) * ctx.fsum(a_terms)
    B = ctx.fsum(b_terms) / 2
    return TransformConstants(A=A, B=B, C=constant_C(R, r, k, ctx))
