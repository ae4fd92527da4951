import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tlbgrid.reference_frames import (
    QdoFrame,
    ThreePhase,
    inverse_park,
    inverse_park_series,
    park,
    park_matrix,
)

from oracles import brute_force_peak, park_by_sums

finite = st.floats(-1e6, 1e6, allow_nan=False)
angles = st.floats(-100.0, 100.0, allow_nan=False)


def test_balanced_snapshot_lands_on_q():
    q, d, o = park(ThreePhase(1.0, -0.5, -0.5), 0.0)
    assert q == pytest.approx(1.0, abs=1e-15)
    assert d == pytest.approx(0.0, abs=1e-15)
    assert o == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("theta", [0.0, 0.3, -2.0, 17.0])
def test_zero_input(theta):
    assert park(ThreePhase(0.0, 0.0, 0.0), theta) == (0.0, 0.0, 0.0)
    assert inverse_park(QdoFrame(0.0, 0.0, 0.0), theta) == (0.0, 0.0, 0.0)


def test_common_mode_goes_to_zero_sequence():
    q, d, o = park(ThreePhase(1.0, 1.0, 1.0), 0.0)
    assert (q, d, o) == pytest.approx((0.0, 0.0, 1.0), abs=1e-15)


def test_inverse_of_unit_q():
    assert inverse_park(QdoFrame(1.0, 0.0, 0.0), 0.0) == pytest.approx((1.0, -0.5, -0.5), abs=1e-15)


@given(finite, finite, finite, angles)
def test_matrix_matches_trig_sums(a, b, c, theta):
    got = park(ThreePhase(a, b, c), theta)
    want = park_by_sums(a, b, c, theta)
    assert got == pytest.approx(want, abs=1e-9 * (1 + abs(a) + abs(b) + abs(c)))


def test_round_trip_random_batch():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(1000):
        f = QdoFrame(*rng.uniform(-10, 10, 3))
        theta = rng.uniform(-50, 50)
        back = park(inverse_park(f, theta), theta)
        worst = max(worst, float(np.max(np.abs(np.subtract(back, f)))))
    assert worst < 1e-12


@settings(max_examples=300)
@given(finite, finite, finite, angles)
def test_round_trip_abc(a, b, c, theta):
    scale = 1.0 + abs(a) + abs(b) + abs(c)
    back = inverse_park(park(ThreePhase(a, b, c), theta), theta)
    assert back == pytest.approx((a, b, c), abs=1e-12 * scale)


def test_balanced_signal_is_constant_in_dq():
    vm, w = 230.0, 2 * math.pi * 60
    for t in np.linspace(0, 0.05, 97):
        f = ThreePhase(vm * math.cos(w * t), vm * math.cos(w * t - 2 * math.pi / 3), vm * math.cos(w * t + 2 * math.pi / 3))
        q, d, o = park(f, w * t)
        assert q == pytest.approx(vm, abs=1e-9)
        assert abs(d) < 1e-9 and abs(o) < 1e-9


@given(st.floats(-50, 50), st.floats(-50, 50))
@settings(max_examples=25, deadline=None)
def test_peak_equals_dq_magnitude(q, d):
    peak = brute_force_peak(lambda th: inverse_park_series(q, d, 0.0, th)[0], 2 * math.pi)
    # dense sampling bounds the discretisation error by |i| * (1 - cos(pi/n))
    assert peak == pytest.approx(math.hypot(q, d), abs=1e-9 + 1e-9 * math.hypot(q, d))


def test_park_matrix_rows():
    k = park_matrix(0.0)
    assert k[2] == pytest.approx([1 / 3] * 3)
    assert k[0] == pytest.approx([2 / 3, -1 / 3, -1 / 3])
