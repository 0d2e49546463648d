"""Shifted two-dimensional lattice sums with an analytic tail.

A summand is indexed by nonzero integers u1, u2 on arithmetic progressions
u_i = offset_i (mod step_i); its phase depends on (u1 mod M1, u2 mod M2) and
its kernel depends on the product u1 * u2 only. Inside a box |u_i| <= U_i the
sum is taken term by term. Outside, the kernel is replaced by its expansion
sum_m c_m (u1 u2)^{-m}, m >= 2, which turns the tail into products of
per-class power sums, each a Hurwitz zeta value. The split is exact in the
box and the tail carries no cancellation, so a modest box gives full double
precision for kernels with 1/(u1 u2)^2 decay, where plain truncation would
only converge like 1/U.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import zeta


@dataclass(frozen=True)
class Axis:
    """Nonzero integers u = offset (mod step) with |u| <= bound in the box."""

    offset: int
    step: int
    bound: int
    period: int  # phase period M, a multiple of step

    def __post_init__(self):
        if self.period % self.step:
            raise ValueError("phase period must be a multiple of the step")

    def box(self) -> np.ndarray:
        first = -self.bound + ((self.offset + self.bound) % self.step)
        u = np.arange(first, self.bound + 1, self.step, dtype=np.int64)
        return u[u != 0]

    def classes(self) -> np.ndarray:
        """Residues mod period that lie on the progression."""
        c = np.arange(self.period, dtype=np.int64)
        return c[(c - self.offset) % self.step == 0]

    def power_sums(self, m: int) -> tuple[np.ndarray, np.ndarray]:
        """(box, tail) sums of u^{-m} per class, aligned with classes()."""
        M = self.period
        box_u = self.box()
        cls = self.classes()
        box = np.array([np.sum(box_u[box_u % M == c].astype(float) ** (-m)) for c in cls])
        U = self.bound
        # first positive u > U with u = c (mod M); first v > U with -v = c
        pos = U + 1 + ((cls - (U + 1)) % M)
        neg = U + 1 + ((-cls - (U + 1)) % M)
        tail = M ** (-float(m)) * (zeta(m, pos / M) + (-1) ** m * zeta(m, neg / M))
        return box, tail


def tail_sum(
    ax1: Axis,
    ax2: Axis,
    phase: np.ndarray,
    coefs: dict[int, complex],
) -> complex:
    """Sum over lattice points outside the box of phase * sum_m coefs[m] (u1 u2)^{-m}.

    ``phase[i, j]`` belongs to classes ax1.classes()[i], ax2.classes()[j].
    Points outside the box are those with |u1| > U1 or |u2| > U2, which
    splits as tail1 x all2 + box1 x tail2.
    """
    total = 0j
    for m, c in coefs.items():
        if m < 2:
            raise ValueError("tail expansion must start at m = 2 for convergence")
        b1, t1 = ax1.power_sums(m)
        b2, t2 = ax2.power_sums(m)
        g2 = b2 + t2
        total += c * (t1 @ phase @ g2 + b1 @ phase @ t2)
    return complex(total)


def class_index(u: np.ndarray, axis: Axis) -> np.ndarray:
    """Row index into axis.classes() for each u."""
    lookup = -np.ones(axis.period, dtype=np.int64)
    lookup[axis.classes()] = np.arange(len(axis.classes()))
    return lookup[u % axis.period]
