"""Exact combinatorial oracles for parts of partitions in residue classes.

Everything here is exact: Python integers for counts and ``Fraction`` for
reciprocal hook-length sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .errors import DomainError


def check_residue_class(R: int, r: int) -> None:
    if R < 1:
        raise DomainError(f"modulus R must be positive, got {R}")
    if not 1 <= r <= R:
        raise DomainError(f"residue r must lie in [1, {R}], got {r}")


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        p = self.parts
        if any(x < 1 for x in p) or any(p[i] < p[i + 1] for i in range(len(p) - 1)):
            raise DomainError(f"not a partition: {p}")

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        p = self.parts
        if not p:
            return self
        return Partition(tuple(sum(1 for x in p if x > i) for i in range(p[0])))

    def hook_lengths(self) -> list[int]:
        """Hook length of every cell of the Young diagram, row by row."""
        conj = self.conjugate().parts
        return [
            (row - j - 1) + (conj[j] - i - 1) + 1
            for i, row in enumerate(self.parts)
            for j in range(row)
        ]


def iter_partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield partitions of ``n`` as weakly decreasing tuples, in reverse
    lexicographic order (largest first part first)."""
    if n < 0:
        return
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        yield ()
        return
    # ascending-composition style stack would be faster; n <= 60 does not need it
    for first in range(max_part, 0, -1):
        for rest in iter_partitions(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=64)
def _partitions_of(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(iter_partitions(n))


def partition_numbers(cap: int) -> list[int]:
    """p(0), ..., p(cap) by Euler's pentagonal-number recurrence."""
    if cap < 0:
        raise DomainError(f"cap must be nonnegative, got {cap}")
    p = [0] * (cap + 1)
    p[0] = 1
    for n in range(1, cap + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p


@dataclass(frozen=True)
class ExactTable:
    """Exact p(n) and T_{R,r}(n) for 0 <= n <= cap."""

    R: int
    r: int
    cap: int
    p: tuple[int, ...]
    t: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        return self.t[n]


def progression_divisor_counts(R: int, r: int, cap: int) -> list[int]:
    """Coefficients of the Lambert series F_{R,r}: c[j] = #{d | j : d = r mod R}."""
    c = [0] * (cap + 1)
    for m in range(r, cap + 1, R):
        for j in range(m, cap + 1, m):
            c[j] += 1
    return c


@lru_cache(maxsize=32)
def exact_parts_count(R: int, r: int, cap: int) -> ExactTable:
    """Exact table of T_{R,r}(n), the number of parts = r (mod R) summed over
    all partitions of n, for n <= cap.

    Uses t[n] = sum_j c[j] p(n - j), where c are the Lambert coefficients of
    F_{R,r}; this is the q-expansion of F_{R,r} / prod(1 - q^m).
    """
    check_residue_class(R, r)
    if cap < 0:
        raise DomainError(f"cap must be nonnegative, got {cap}")
    p = partition_numbers(cap)
    c = progression_divisor_counts(R, r, cap)
    support = [j for j in range(1, cap + 1) if c[j]]
    t = [0] * (cap + 1)
    for n in range(1, cap + 1):
        acc = 0
        for j in support:
            if j > n:
                break
            acc += c[j] * p[n - j]
        t[n] = acc
    return ExactTable(R, r, cap, tuple(p), tuple(t))


def brute_force_parts_count(R: int, r: int, n: int) -> int:
    """T_{R,r}(n) by enumerating every partition of n."""
    check_residue_class(R, r)
    target = r % R
    return sum(1 for lam in _partitions_of(n) for part in lam if part % R == target)


def hook_sum(R: int, r: int, n: int) -> Fraction:
    """Sum over partitions of n of 1/h over hook lengths h = r (mod R)."""
    check_residue_class(R, r)
    target = r % R
    total = Fraction(0)
    for lam in _partitions_of(n):
        for h in Partition(lam).hook_lengths():
            if h % R == target:
                total += Fraction(1, h)
    return total
