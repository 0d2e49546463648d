import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partition_ap.errors import DomainError
from partition_ap.qseries import TruncationParams, dedekind_eta
from partition_ap.specfun import EULER_GAMMA
from partition_ap.transform import (
    TransformFrame,
    constants_ABC,
    dedekind_sum,
    dedekind_sum_direct,
    eta_multiplier,
    farey_complement,
    frames,
    nu_hk,
    phi_multiplier,
    weil_multiplier,
    weil_multiplier_double_sum,
)


def test_farey_complement():
    assert farey_complement(0, 1) == 0
    assert farey_complement(1, 2) == 1
    assert farey_complement(2, 3) == 1
    with pytest.raises(DomainError):
        farey_complement(2, 4)


@given(k=st.integers(1, 200), data=st.data())
def test_frame_invariants(k, data):
    h = data.draw(st.integers(0, k - 1).filter(lambda h: math.gcd(h, k) == 1))
    frame = TransformFrame.of(h, k)
    assert 0 <= frame.hp < k
    assert (h * frame.hp + 1) % k == 0
    (a, b), (c, d) = frame.matrix
    assert a * d - b * c == 1


def test_dedekind_sums():
    assert dedekind_sum(0, 1) == 0
    assert dedekind_sum(1, 2) == 0
    assert dedekind_sum(1, 3) == Fraction(1, 18)
    with pytest.raises(DomainError):
        dedekind_sum(2, 6)


@given(k=st.integers(1, 80), data=st.data())
def test_dedekind_sum_reciprocity_route_matches_direct_sum(k, data):
    h = data.draw(st.integers(0, k - 1).filter(lambda h: math.gcd(h, k) == 1))
    assert dedekind_sum(h, k) == dedekind_sum_direct(h, k)


def test_constants_at_level_one():
    c = constants_ABC(1, 1, TransformFrame.of(0, 1))
    assert c.C == pytest.approx(1 / (2 * math.pi))
    assert complex(c.A) == pytest.approx(-(math.log(2 * math.pi) - EULER_GAMMA) / (2 * math.pi), abs=1e-14)
    assert abs(constants_ABC(2, 1, TransformFrame.of(0, 1)).B) < 1e-15
    assert constants_ABC(2, 1, TransformFrame.of(1, 2)).C == 0


@given(R=st.integers(1, 8), k=st.integers(1, 12), data=st.data())
@settings(max_examples=40, deadline=None)
def test_log_coefficient_vanishes_exactly_off_the_gcd_condition(R, k, data):
    r = data.draw(st.integers(1, R))
    C = constants_ABC(R, r, frames(k)[0]).C
    assert C >= 0
    assert (C == 0) == (r % math.gcd(R, k) != 0)


def test_trivial_multipliers():
    assert complex(nu_hk(TransformFrame.of(0, 1))) == pytest.approx(1, abs=1e-15)
    for k in range(1, 13):
        for frame in frames(k):
            assert abs(eta_multiplier(frame)) == pytest.approx(1, abs=1e-14)
            assert abs(nu_hk(frame)) == pytest.approx(1, abs=1e-14)


@pytest.mark.parametrize("k", range(1, 13))
def test_eta_transformation_validates_multiplier(k):
    for frame in frames(k):
        for z in (1.1, 0.8 + 0.3j):
            tau = frame.h / k + 1j * z / k ** 2
            if tau.imag < 0.004:
                continue
            image = frame.hp / k + 1j / z
            # Im tau goes down to 0.004, so the product needs far more than the default order
            tp = TruncationParams(q_order=8000)
            lhs = dedekind_eta(tau, tp)
            rhs = eta_multiplier(frame) * cmath.sqrt(1j * k / z) * dedekind_eta(image, tp)
            assert abs(lhs - rhs) <= 1e-9 * max(1, abs(lhs)), (frame, z)


def test_eta_multiplier_example_frame():
    frame = TransformFrame.of(1, 3)
    z = 1.1
    lhs = dedekind_eta(1 / 3 + 1j * z / 9)
    rhs = eta_multiplier(frame) * cmath.sqrt(3j / z) * dedekind_eta(frame.hp / 3 + 1j / z)
    assert abs(lhs - rhs) <= 1e-9


@pytest.mark.parametrize("R", range(1, 7))
def test_weil_multiplier_at_level_one(R):
    frame = TransformFrame.of(0, 1)
    for r in range(1, R + 1):
        for a1 in range(R):
            for a2 in range(R):
                expected = cmath.exp(-2j * math.pi * a1 * r / R) / R
                assert complex(weil_multiplier(R, r, frame, (a1, a2))) == pytest.approx(expected, abs=1e-14)


@given(R=st.integers(1, 6), k=st.integers(1, 8), data=st.data())
@settings(max_examples=60, deadline=None)
def test_theta_multiplier_properties(R, k, data):
    r = data.draw(st.integers(1, R))
    frame = data.draw(st.sampled_from(frames(k)))
    alpha = (data.draw(st.integers(0, R - 1)), data.draw(st.integers(0, R - 1)))
    phi = complex(phi_multiplier(R, r, frame, alpha))
    assert abs(phi) <= 1 + 1e-12
    mirrored = complex(phi_multiplier(R, R - r if r < R else R, frame, ((-alpha[0]) % R, (-alpha[1]) % R)))
    if r < R:
        assert phi == pytest.approx(mirrored, abs=1e-12)
    shifted = (alpha[0] + R * data.draw(st.integers(-3, 3)), alpha[1] + R * data.draw(st.integers(-3, 3)))
    assert complex(weil_multiplier(R, r, frame, shifted)) == pytest.approx(
        complex(weil_multiplier(R, r, frame, alpha)), abs=1e-13
    )
    assert complex(weil_multiplier(R, r, frame, alpha)) == pytest.approx(
        weil_multiplier_double_sum(R, r, frame, alpha), abs=1e-12
    )


@pytest.mark.parametrize("R", [1, 3, 5, 6])
def test_constant_growth_in_k_stays_bounded(R):
    worst_a = worst_b = 0.0
    for k in range(1, 51):
        for r in range(1, R + 1):
            for frame in frames(k):
                c = constants_ABC(R, r, frame)
                worst_a = max(worst_a, abs(c.A) / (k * k * math.log(k) + (k == 1)))
                worst_b = max(worst_b, abs(c.B) / k ** 2)
    assert worst_a < 2.0
    assert worst_b < 1.0
