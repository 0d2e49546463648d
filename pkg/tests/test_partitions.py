import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partition_ap.errors import DomainError
from partition_ap.partitions import (
    Partition,
    brute_force_parts_count,
    exact_parts_count,
    hook_sum,
    iter_partitions,
    partition_numbers,
)
from partition_ap.qseries import TruncationParams, dedekind_eta, eisenstein_F


def test_partition_numbers_small_values():
    assert partition_numbers(0) == [1]
    p = partition_numbers(10)
    assert p[4] == 5
    assert p[10] == 42


def test_partition_numbers_match_enumeration():
    p = partition_numbers(25)
    assert all(p[n] == sum(1 for _ in iter_partitions(n)) for n in range(26))


def test_partition_numbers_are_big_integers():
    assert partition_numbers(1000)[1000] == 24061467864032622473692149727991


def test_enumeration_yields_weakly_decreasing_parts():
    for parts in iter_partitions(12):
        lam = Partition(parts)
        assert lam.size == 12
        assert all(a >= b >= 1 for a, b in zip(parts, parts[1:] + (1,)))


@pytest.mark.parametrize("R, r, n, expected", [(1, 1, 4, 12), (2, 1, 4, 8), (2, 2, 4, 4), (5, 3, 2, 0)])
def test_parts_counts_known_values(R, r, n, expected):
    assert exact_parts_count(R, r, max(n, 1)).t[n] == expected
    assert brute_force_parts_count(R, r, n) == expected


@pytest.mark.parametrize("R", range(1, 7))
def test_no_parts_in_the_empty_partition(R):
    for r in range(1, R + 1):
        table = exact_parts_count(R, r, 3)
        assert table.t[0] == 0 and table.p[0] == 1


@pytest.mark.parametrize("r", [0, 4, -1])
def test_residue_out_of_range_rejected(r):
    with pytest.raises(DomainError):
        exact_parts_count(3, r, 10)


@given(R=st.integers(1, 6), n=st.integers(0, 30), data=st.data())
@settings(max_examples=60, deadline=None)
def test_convolution_matches_brute_force(R, n, data):
    r = data.draw(st.integers(1, R))
    assert exact_parts_count(R, r, 30).t[n] == brute_force_parts_count(R, r, n)


@given(R=st.integers(1, 12), n=st.integers(0, 200))
@settings(max_examples=60, deadline=None)
def test_residue_classes_partition_all_parts(R, n):
    total = sum(exact_parts_count(R, r, 200).t[n] for r in range(1, R + 1))
    assert total == exact_parts_count(1, 1, 200).t[n]


@pytest.mark.parametrize("R, r, n, expected", [(1, 1, 1, 1), (1, 1, 4, 12), (2, 1, 4, 8)])
def test_hook_sum_known_values(R, r, n, expected):
    value = hook_sum(R, r, n)
    assert isinstance(value, Fraction)
    assert value == expected


@given(R=st.integers(1, 5), n=st.integers(0, 12), data=st.data())
@settings(max_examples=30, deadline=None)
def test_hook_sum_is_the_parts_count(R, n, data):
    r = data.draw(st.integers(1, R))
    value = hook_sum(R, r, n)
    assert value.denominator == 1
    assert value == exact_parts_count(R, r, 15).t[n]


def test_conjugate_preserves_hook_multiset():
    for parts in iter_partitions(9):
        lam = Partition(parts)
        assert sorted(lam.hook_lengths()) == sorted(lam.conjugate().hook_lengths())


@pytest.mark.parametrize("R, r", [(1, 1), (3, 2), (5, 5)])
def test_counts_are_coefficients_of_the_generating_function(R, r):
    # Cauchy coefficients of F_{R,r}(tau) / prod(1 - q^m) on the circle |q| = rho
    N, rho, cap = 1024, 0.9, 50
    y = -math.log(rho) / (2 * math.pi)
    tp = TruncationParams(q_order=800)
    samples = []
    for j in range(N):
        tau = j / N + 1j * y
        q = cmath.exp(2j * math.pi * tau)
        euler = dedekind_eta(tau, tp) / cmath.exp(2j * math.pi * tau / 24)
        samples.append(eisenstein_F(R, r, 1, tau, tp) / euler)
    coeffs = np.fft.fft(samples) / N
    table = exact_parts_count(R, r, cap)
    for n in range(cap + 1):
        value = coeffs[n] / rho ** n
        assert abs(value - table.t[n]) < 0.05, n
