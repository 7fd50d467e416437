import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hinge_landscape.curves import (
    BoundaryPattern,
    boundary_pattern,
    census_report,
    enumerate_patterns,
    geometric_pattern,
    geometric_patterns,
    intersect,
    rational_grid,
    witness_polylines,
)
from hinge_landscape.stationary import CanonicalCurve


@pytest.mark.parametrize(
    "uv, expected",
    [
        ((1, 0), (True, True, True, True)),
        ((0.5, 0), (False, False, True, True)),
        # enters through y = 0 and leaves through x = pi, never reaching x = 0 or y = pi
        ((1, -0.25), (False, True, True, False)),
        ((2, 0.125), (True, True, False, False)),
    ],
)
def test_boundary_pattern_examples(uv, expected):
    assert boundary_pattern(uv).as_tuple() == expected
    assert geometric_pattern(uv).as_tuple() == expected


def test_boundary_pattern_accepts_curve():
    assert boundary_pattern(CanonicalCurve(1.0, -0.25)).labels == ["C", "D"]
    with pytest.raises(ValueError):
        boundary_pattern((0, 0.5))


def test_pattern_codes_round_trip():
    for code in range(16):
        p = BoundaryPattern.from_code(code)
        assert p.code == code
    assert str(BoundaryPattern(False, True, True, False)) == "-CD-"


def test_census_default():
    census = enumerate_patterns()
    assert census.count == 9
    assert census.all_confirmed
    assert BoundaryPattern(True, True, True, True) in census.witnesses
    assert census.cells == 400 * 801
    # witnesses are the lexicographically smallest lattice cells
    for p, (u, v) in census.witnesses.items():
        assert boundary_pattern((u, v)) == p


def test_census_all_true_witness_realized():
    census = enumerate_patterns(rational_grid(1, 1, 1), rational_grid(0, 0, 1))
    assert census.patterns == [BoundaryPattern(True, True, True, True)]


def test_census_refinement_stable():
    coarse = enumerate_patterns(confirm=False)
    fine = enumerate_patterns(rational_grid("0.002", 4, "0.002"), rational_grid(-4, 4, "0.002"), confirm=False)
    assert set(coarse.patterns) == set(fine.patterns)


def test_empty_cells_excluded():
    census = enumerate_patterns(rational_grid("0.5", "0.5", 1), rational_grid(3, 3, 1))
    assert census.count == 0 and census.empty_cells == 1


def test_rational_grid():
    g = rational_grid(-1, 1, "0.5")
    assert g == [Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1)]
    assert rational_grid(0.01, 0.03, 0.01) == [Fraction(1, 100), Fraction(2, 100), Fraction(3, 100)]
    with pytest.raises(ValueError):
        rational_grid(0, 1, 0)


def test_geometric_agrees_on_coarse_grid():
    # away from tangencies, where float evaluation is unambiguous
    us = np.arange(0.013, 4, 0.097)
    vs = np.arange(-3.987, 4, 0.113)
    U, V = (a.ravel() for a in np.meshgrid(us, vs))
    codes = geometric_patterns(U, V, n_samples=4000)
    for u, v, code in zip(U, V, codes):
        margins = (abs(1 - v) / u - 1, abs(-1 - v) / u - 1, abs(u + v) - 1, abs(v - u) - 1)
        if min(abs(m) for m in margins) < 1e-6:
            continue
        exists = v - u <= 1 and v + u >= -1
        expected = boundary_pattern((u, v)).code if exists else 0
        assert code == expected


@settings(max_examples=200, deadline=None)
@given(st.floats(0.01, 4), st.floats(-4, 4))
def test_pattern_structure(u, v):
    # every curve that meets the patch enters on A or D and leaves on C or F
    p = boundary_pattern((u, v))
    if v - u <= 1 and v + u >= -1:
        assert (p.hits_x0 or p.hits_y0) and (p.hits_xpi or p.hits_ypi)


def test_census_report_and_polylines():
    census = enumerate_patterns(confirm=True)
    report = census_report(census)
    assert len(report) == 9
    assert all(r["geometric_confirmed"] for r in report)
    assert set(report[0]) == {"pattern", "labels", "witness_u", "witness_v", "witness_exact", "geometric_confirmed"}
    rows = list(witness_polylines(census, n_points=10))
    assert len(rows) == 90


def test_intersect_reference_curves():
    hit = intersect(CanonicalCurve(1.0, -0.25), CanonicalCurve(2.0, 0.125))
    assert hit.cos_y == pytest.approx(-0.375, abs=1e-15)
    assert hit.cos_x == pytest.approx(-0.625, abs=1e-15)
    x, y = hit.points[0]
    assert x == pytest.approx(2.2459278597, abs=1e-9)
    assert y == pytest.approx(1.955193, abs=1e-6)
    for c in (CanonicalCurve(1.0, -0.25), CanonicalCurve(2.0, 0.125)):
        assert abs(c.residual(x, y)) <= 1e-12


def test_intersect_degenerate_cases():
    same = intersect(CanonicalCurve(1.0, 0.0), CanonicalCurve(1.0, 0.0))
    assert same.coincident and not same.points and bool(same)
    parallel = intersect(CanonicalCurve(1.0, 0.0), CanonicalCurve(1.0, 0.5))
    assert not parallel
    miss = intersect(CanonicalCurve(1.0, 0.0), CanonicalCurve(3.0, 2.5))
    assert not miss.points


@settings(max_examples=200, deadline=None)
@given(st.floats(0.05, 4), st.floats(-2, 2), st.floats(0.05, 4), st.floats(-2, 2))
def test_intersect_points_on_both(ua, va, ub, vb):
    a, b = CanonicalCurve(ua, va), CanonicalCurve(ub, vb)
    for x, y in intersect(a, b).points:
        assert 0 <= x <= math.pi and 0 <= y <= math.pi
        assert abs(a.residual(x, y)) <= 1e-9 and abs(b.residual(x, y)) <= 1e-9
