import math

import numpy as np
import pytest

from _support import SAMPLE_A, SAMPLE_B
from hinge_landscape.ambiguity import (
    FIGURE_HEADER,
    PAPER_RECIPE,
    PairRecipe,
    SamplePair,
    construct_pair,
    false_minima_report,
    figure_rows,
    grids_equal,
    pair_report,
    paper_example,
)
from hinge_landscape.calculus import gradient_multi
from hinge_landscape.errors import DegenerateCurvesError, InvalidSamplesError, NoIntersectionError
from hinge_landscape.model import Sample, is_valid, objective, objective_scale
from hinge_landscape.stationary import on_curve_residual


def test_grids_equal_examples():
    assert grids_equal(SAMPLE_A, SAMPLE_B)
    s = Sample(1.0, 0.4, 2.0, -0.5, 0.1, 1.5)
    scaled = Sample(3.0, 0.4, 6.0, -1.5, 0.1, 4.5)
    assert grids_equal(s, scaled)
    flipped = Sample(-1.0, 0.4, 2.0, -0.5, 0.1, 1.5)
    assert not grids_equal(s, flipped)
    # negative scale flips alpha by pi
    assert not grids_equal(s, Sample(-1.0, 0.4, -2.0, -0.5, 0.1, 1.5))


def test_reference_pair():
    pair = paper_example()
    assert pair.sample_a == SAMPLE_A and pair.sample_b == SAMPLE_B
    assert (pair.curve_a.u, pair.curve_a.v) == pytest.approx((1.0, -0.25), abs=1e-12)
    assert (pair.curve_b.u, pair.curve_b.v) == pytest.approx((2.0, 0.125), abs=1e-12)
    assert pair.lambda1**2 == pytest.approx(4.0) and pair.lambda2**2 == pytest.approx(2.0)
    lam1_sq = pair.lambda1**2
    assert pair.sample_b.beta == pytest.approx(pair.sample_b.s1 - pair.sample_a.beta / (2 * lam1_sq))
    assert pair.intersection()
    for a, b in ((SAMPLE_A.w11, SAMPLE_B.w11), (SAMPLE_A.w13, SAMPLE_B.w13)):
        assert a == pytest.approx(pair.lambda1 * b)
    assert SAMPLE_A.w21 == pytest.approx(pair.lambda2 * SAMPLE_B.w21)


def test_construct_pair_reproduces_reference():
    pair = construct_pair(PAPER_RECIPE)
    for got, want in zip(pair.sample_a.as_tuple() + pair.sample_b.as_tuple(), SAMPLE_A.as_tuple() + SAMPLE_B.as_tuple()):
        assert got == pytest.approx(want, abs=1e-12)


@pytest.mark.parametrize("q", [1.5, 2.0, 3.0])
def test_unit_slope_when_rq_is_one(q):
    pair = construct_pair(PairRecipe(Q=q, R=1 / q, Bs1=4.0, lambda1_sq=4.0, Abeta=4.0))
    assert pair.curve_a.u == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("q", [0.5, 0.75, 1.25])
def test_recipe_rejected_when_curves_miss(q):
    with pytest.raises(NoIntersectionError):
        construct_pair(PairRecipe(Q=q, R=1 / q, Bs1=4.0, lambda1_sq=4.0, Abeta=4.0))


def test_construct_pair_other_alphas():
    pair = construct_pair(PAPER_RECIPE, base_alphas=(0.4, -1.1))
    assert grids_equal(pair.sample_a, pair.sample_b)
    assert pair.sample_a.alpha1 == pytest.approx(0.4)
    assert pair.sample_b.alpha2 == pytest.approx(-1.1)
    rep = false_minima_report(pair)
    assert rep.count == 16


def test_construct_pair_errors():
    with pytest.raises(InvalidSamplesError):
        PairRecipe(Q=-1, R=1, Bs1=1, lambda1_sq=1, Abeta=1)
    # beta_A >= 2 s2_A forces w12^2 >= |w2|^2 in sample A
    with pytest.raises(InvalidSamplesError, match="validity"):
        construct_pair(PairRecipe(Q=2, R=0.5, Bs1=4, lambda1_sq=4, Abeta=40), Bw22=2.0)
    # negative beta without w22 cannot be realized
    with pytest.raises(InvalidSamplesError):
        construct_pair(PairRecipe(Q=2, R=0.5, Bs1=4, lambda1_sq=4, Abeta=-4))
    with pytest.raises(DegenerateCurvesError):
        construct_pair(PairRecipe(Q=2, R=1.0, Bs1=4, lambda1_sq=1, Abeta=4))
    with pytest.raises(NoIntersectionError):
        construct_pair(PAPER_RECIPE, Bbeta=0.0)


def test_false_minima_report_reference():
    pair = paper_example()
    rep = false_minima_report(pair)
    assert rep.count == 16
    assert rep.min_distance < math.pi / 3
    scale = objective_scale(pair.samples)
    assert np.all(rep.objective_values <= 1e-12 * scale)
    assert np.all(rep.gradient_norms <= 1e-8 * scale)
    assert np.all((rep.points >= 0) & (rep.points < 2 * math.pi))


def test_reflection_closure():
    pair = paper_example()
    rep = false_minima_report(pair)
    pts = {tuple(np.round(p, 9)) for p in rep.points}
    a1, a2 = pair.sample_a.alpha1, pair.sample_a.alpha2
    # a lattice maximum at (-a1 + pi/2, -a2); reflect each point through it
    c1, c2 = -a1 + math.pi / 2, -a2
    for t1, t2 in rep.points:
        for s1, s2 in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            q = (c1 + s1 * (t1 - c1), c2 + s2 * (t2 - c2))
            q = tuple(np.round(np.mod(q, 2 * math.pi), 9))
            assert any(np.hypot(q[0] - p[0], q[1] - p[1]) < 1e-7 for p in pts)


def test_report_other_cell():
    pair = paper_example()
    rep = false_minima_report(pair, cell_origin=(-math.pi, -math.pi))
    assert rep.count == 16
    assert np.all((rep.points >= -math.pi) & (rep.points < math.pi))
    assert rep.min_distance == pytest.approx(false_minima_report(pair).min_distance)


def test_pair_report_fields():
    pair = paper_example()
    report = pair_report(pair)
    for key in ("sample_a", "sample_b", "lambda1", "lambda2", "u_a", "v_a", "u_b", "v_b", "intersections", "min_distance"):
        assert key in report
    assert report["count"] == 16
    assert report["patch_intersection"]["cos_x"] == pytest.approx(-0.625)
    assert set(report["intersections"][0]) == {"theta1", "theta2", "objective"}


def test_figure_rows():
    pair = paper_example()
    rows = list(figure_rows(pair, n_points=50))
    assert len(rows[0]) == len(FIGURE_HEADER)
    series = [r[0] for r in rows]
    assert series.count("curve_a") == 50 and series.count("curve_b") == 50
    assert series.count("intersection") == 16
    for r in rows:
        assert abs(r[-1]) <= 1e-10 * 30


def test_pair_invariants_for_reference_pair():
    pair = paper_example()
    assert all(is_valid(s) for s in pair.samples)
    assert abs(pair.curve_a.u - pair.curve_b.u) > 1e-9 or abs(pair.curve_a.v - pair.curve_b.v) > 1e-9
    for t1, t2 in false_minima_report(pair).points:
        for s in pair.samples:
            assert abs(on_curve_residual(s, (t1, t2))) <= 1e-10 * 30
        assert gradient_multi(pair.samples, (t1, t2)).norm() <= 1e-8
        assert objective(pair.samples, (t1, t2)) <= 1e-20


def test_unverified_pair_rejected():
    bad = SamplePair(SAMPLE_A, Sample(1.0, 0.0, 1.0, 1.0, 0.0, 1.0), 1.0, 1.0)
    with pytest.raises(AssertionError):
        false_minima_report(bad)
