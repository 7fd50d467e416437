import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import SAMPLE_A, SAMPLE_B, at_phase, random_sample
from hinge_landscape.errors import DegenerateSampleError
from hinge_landscape.model import (
    Angles,
    Sample,
    SampleSet,
    alpha_of,
    beta_of,
    c_of,
    d_of,
    d_phasor,
    is_valid,
    objective,
    p_of,
    r_of,
    s_of,
    t_of,
    t_phasor,
    validity_margins,
)

comp = st.floats(-10, 10, allow_nan=False)
angle = st.floats(-20, 20, allow_nan=False)


def _half(w):
    return w if w[0] ** 2 + w[2] ** 2 > 1e-8 else (1.0, w[1], w[2])


@pytest.mark.parametrize(
    "w, expected",
    [((3, 99, 4), 25), ((0, 0, 1), 1), (SAMPLE_A.w1, 16)],
)
def test_s_of(w, expected):
    assert s_of(w) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize(
    "w, expected",
    [((1, 0, 1), math.pi / 4), (SAMPLE_A.w1, math.pi / 3), (SAMPLE_B.w1, math.pi / 3), ((0, 0, -1), math.pi)],
)
def test_alpha_of(w, expected):
    assert alpha_of(w) == pytest.approx(expected, abs=1e-15)


def test_alpha_rejects_zero_plane():
    with pytest.raises(DegenerateSampleError):
        alpha_of((0, 3, 0))


@pytest.mark.parametrize(
    "theta, w, expected",
    [(0.0, (1, 0, 1), math.pi / 4), (-math.pi / 3, SAMPLE_A.w1, 0.0), (math.pi / 2, (0, 0, 1), math.pi / 2)],
)
def test_r_of(theta, w, expected):
    assert r_of(theta, w) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize(
    "theta, w, expected",
    [(math.pi / 2, (3, 0, 0), 3.0), (0.0, (0, 0, 1), -1.0), (math.pi / 4, (1, 0, 1), 0.0)],
)
def test_t_of(theta, w, expected):
    assert t_of(theta, w) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize(
    "theta, w, expected",
    [(math.pi / 2, (3, 4, 0), 25.0), (math.pi / 4, (1, 0, 1), 0.0), (0.0, (0, 2, 1), 5.0)],
)
def test_p_of(theta, w, expected):
    assert p_of(theta, w) == pytest.approx(expected, abs=1e-14)


@settings(max_examples=300, deadline=None)
@given(st.tuples(comp, comp, comp), angle)
def test_phasor_matches_direct_form(w, theta):
    w = _half(w)
    t = t_of(theta, w)
    # the single-cosine form carries a minus sign; its square is what matters
    assert abs(t - t_phasor(theta, w)) <= 1e-12 * (1 + abs(t)) * max(1.0, math.sqrt(s_of(w)))
    assert abs(t * t - s_of(w) * math.cos(r_of(theta, w)) ** 2) <= 1e-11 * (1 + s_of(w))


def test_p_range_and_extremes(rng):
    for _ in range(100):
        w = rng.uniform(-10, 10, 3)
        theta = rng.uniform(-10, 10, 100)
        p = p_of(theta, w)
        norm = float(w @ w)
        assert np.all(p >= w[1] ** 2 - 1e-12 * (1 + norm))
        assert np.all(p <= norm + 1e-12 * (1 + norm))
        a = alpha_of(w)
        assert p_of(-a + math.pi / 2, w) == pytest.approx(w[1] ** 2, abs=1e-12 * norm)
        assert p_of(-a, w) == pytest.approx(norm, rel=1e-12)


def test_c_and_beta_examples():
    assert c_of(SAMPLE_A) == pytest.approx(4.0, abs=1e-14)
    assert beta_of(SAMPLE_A) == pytest.approx(4.0, abs=1e-14)
    assert c_of(SAMPLE_B) == pytest.approx(-0.5, abs=1e-14)
    assert beta_of(SAMPLE_B) == pytest.approx(3.5, abs=1e-14)
    same = Sample(1.5, -2.0, 0.3, 1.5, -2.0, 0.3)
    assert c_of(same) == 0.0 and beta_of(same) == 0.0


@settings(max_examples=200, deadline=None)
@given(st.tuples(comp, comp, comp, comp, comp, comp))
def test_c_identity(w):
    w1, w2 = _half(w[:3]), _half(w[3:])
    s = Sample(*w1, *w2)
    assert abs(s.c - s.s1 + s.s2 - s.beta) <= 1e-12 * (1 + s.s1 + s.s2 + abs(s.beta))


def test_d_examples():
    same = Sample(1.0, 2.0, 3.0, 1.0, 2.0, 3.0)
    assert d_of(same, (0.4, 0.4)) == pytest.approx(0.0, abs=1e-14)
    assert d_of(SAMPLE_A, at_phase(SAMPLE_A, math.pi, 0.0)) == pytest.approx(-14.0, abs=1e-12)
    on_curve = at_phase(SAMPLE_A, math.acos(-0.25), math.pi / 2)
    assert d_of(SAMPLE_A, on_curve) == pytest.approx(0.0, abs=1e-12)


@settings(max_examples=300, deadline=None)
@given(st.tuples(comp, comp, comp, comp, comp, comp), angle, angle)
def test_d_forms_agree(w, t1, t2):
    s = Sample(*_half(w[:3]), *_half(w[3:]))
    scale = s.norm1_sq + s.norm2_sq
    assert abs(d_of(s, (t1, t2)) - d_phasor(s, (t1, t2))) <= 1e-12 * (1 + scale)


def test_objective_examples():
    assert objective(SAMPLE_A, at_phase(SAMPLE_A, math.pi, 0.0)) == pytest.approx(196.0, rel=1e-12)
    assert objective(SAMPLE_A, at_phase(SAMPLE_A, math.acos(-0.25), math.pi / 2)) <= 1e-24
    angles = (0.7, -1.3)
    assert objective([SAMPLE_B, SAMPLE_B], angles) == pytest.approx(2 * d_of(SAMPLE_B, angles) ** 2, rel=1e-14)


def test_objective_period_pi(rng):
    for _ in range(50):
        s = random_sample(rng)
        t1, t2 = rng.uniform(-5, 5, 2)
        base = objective(s, (t1, t2))
        for shift in ((math.pi, 0), (0, math.pi), (-math.pi, 3 * math.pi)):
            assert objective(s, (t1 + shift[0], t2 + shift[1])) == pytest.approx(base, rel=1e-9, abs=1e-9)


def test_objective_vectorized():
    t = np.linspace(0, 1, 5)
    vals = objective(SAMPLE_A, (t, t))
    assert vals.shape == (5,)
    assert vals[2] == pytest.approx(objective(SAMPLE_A, (t[2], t[2])))


@pytest.mark.parametrize(
    "sample, expected",
    [(SAMPLE_A, True), (SAMPLE_B, True), (Sample(1, 5, 0, 1, 0, 1), False), (Sample(1, 0, 1, 1, 5, 0), False)],
)
def test_is_valid(sample, expected):
    assert is_valid(sample) is expected


def test_validity_margins_values():
    assert validity_margins(SAMPLE_A) == pytest.approx((16 - 2, 18 - 0))
    assert validity_margins(SAMPLE_B) == pytest.approx((8 - 7 / 4, 23 / 4 - 0))


@pytest.mark.parametrize(
    "components",
    [(0, 1, 0, 1, 0, 1), (1, 0, 1, 0, 7, 0), (math.nan, 0, 1, 1, 0, 1), (1, 0, math.inf, 1, 0, 1)],
)
def test_sample_rejects_degenerate(components):
    with pytest.raises(DegenerateSampleError):
        Sample(*components)


def test_sample_accessors():
    s = Sample.from_vectors((1, 2, 3), (4, 5, 6))
    assert s.as_tuple() == (1, 2, 3, 4, 5, 6)
    assert s.norm1_sq == 14 and s.norm2_sq == 77
    assert s.scaled(2).w2 == (8, 10, 12)
    with pytest.raises(DegenerateSampleError):
        Sample.from_vectors((1, 2), (3, 4, 5))


def test_sample_set_and_angles():
    ss = SampleSet([SAMPLE_A, SAMPLE_B])
    assert ss.n == 2 and len(ss) == 2 and ss[1] is SAMPLE_B
    assert list(ss) == [SAMPLE_A, SAMPLE_B]
    with pytest.raises(ValueError):
        SampleSet([])
    a = Angles(0.1, 0.2)
    t1, t2 = a
    assert (t1, t2) == (0.1, 0.2)
    np.testing.assert_array_equal(a.as_array(), [0.1, 0.2])
    assert objective(ss, a) == objective([SAMPLE_A, SAMPLE_B], (0.1, 0.2))
