"""Sample pairs that share a stationary lattice but not a zero curve.

Two samples have the same lattice exactly when their ``(w_i1, w_i3)`` pairs
are positive multiples of each other, ``A = lambda_i * B``.  If their zero
curves then cross inside the patch, the reflections of the crossing are also
zeros of the two-sample objective.  Those extra zeros are false minima, only a
fraction of a radian apart.

Construction here is *generate then verify*: the closed-form relations only
propose candidates, and a pair is accepted once its curves are shown
numerically to cross at an interior patch point.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .calculus import gradient_multi
from .curves import Intersection, intersect
from .errors import DegenerateCurvesError, InvalidSamplesError, NoIntersectionError
from .model import Sample, is_valid, objective, objective_scale
from .stationary import CURVE_CSV_HEADER, CanonicalCurve, canonical, on_curve_residual, trace_curve

__all__ = [
    "SamplePair",
    "PairRecipe",
    "FalseMinimaReport",
    "grids_equal",
    "paper_example",
    "construct_pair",
    "false_minima_report",
    "pair_report",
    "figure_rows",
    "PAPER_RECIPE",
]

TWO_PI = 2.0 * math.pi


def _wrap(angle: float) -> float:
    """Map to (-pi, pi]."""
    a = math.remainder(angle, TWO_PI)
    return math.pi if a == -math.pi else a


def grids_equal(a: Sample, b: Sample, tol: float = 1e-12) -> bool:
    """True iff both phase offsets agree modulo ``2 pi``."""
    return all(abs(_wrap(pa - pb)) <= tol for pa, pb in ((a.alpha1, b.alpha1), (a.alpha2, b.alpha2)))


@dataclass(frozen=True)
class SamplePair:
    sample_a: Sample
    sample_b: Sample
    lambda1: float
    lambda2: float

    @property
    def curve_a(self) -> CanonicalCurve:
        return canonical(self.sample_a)

    @property
    def curve_b(self) -> CanonicalCurve:
        return canonical(self.sample_b)

    @property
    def samples(self) -> tuple[Sample, Sample]:
        return (self.sample_a, self.sample_b)

    def intersection(self) -> Intersection:
        return intersect(self.curve_a, self.curve_b)


@dataclass(frozen=True)
class PairRecipe:
    """Free parameters of the construction.

    ``Q = Bs2 / Bs1`` and ``R = lambda2**2 / lambda1**2``; ``Bs1`` and
    ``lambda1_sq`` fix the scale, ``Abeta`` the offset of sample A.
    """

    Q: float
    R: float
    Bs1: float
    lambda1_sq: float
    Abeta: float

    def __post_init__(self):
        for name in ("Q", "R", "Bs1", "lambda1_sq"):
            if not getattr(self, name) > 0:
                raise InvalidSamplesError(f"recipe parameter {name} must be positive")


PAPER_RECIPE = PairRecipe(Q=2.0, R=0.5, Bs1=4.0, lambda1_sq=4.0, Abeta=4.0)
_PAPER_ALPHAS = (math.pi / 3, math.atan2(1.0, math.sqrt(7.0)))


def _verify_pair(pair: SamplePair) -> Intersection:
    a, b = pair.sample_a, pair.sample_b
    for name, s in (("A", a), ("B", b)):
        if not is_valid(s):
            raise InvalidSamplesError(f"sample {name} fails the validity condition w12^2 < |w2|^2 and w22^2 < |w1|^2")
    if not grids_equal(a, b, tol=1e-9):
        raise AssertionError("pair does not share a lattice")
    ca, cb = pair.curve_a, pair.curve_b
    if abs(ca.u - cb.u) <= 1e-12 * max(ca.u, cb.u):
        raise DegenerateCurvesError(f"curves share u = {ca.u:g}; they coincide or never meet")
    hit = intersect(ca, cb)
    if not hit.points or abs(hit.cos_x) >= 1 or abs(hit.cos_y) >= 1:
        raise NoIntersectionError("zero curves do not cross at an interior patch point")
    x, y = hit.points[0]
    if abs(ca.residual(x, y)) > 1e-12 or abs(cb.residual(x, y)) > 1e-12:
        raise AssertionError("intersection does not satisfy both curve equations")
    return hit


def paper_example() -> SamplePair:
    """The hard-coded pair ``A = ((sqrt12, sqrt2, 2), (sqrt2, 0, sqrt14))``, ``B = ((sqrt3, sqrt(7/4), 1), (1, 0, sqrt7))``."""
    a = Sample(math.sqrt(12), math.sqrt(2), 2.0, math.sqrt(2), 0.0, math.sqrt(14))
    b = Sample(math.sqrt(3), math.sqrt(7 / 4), 1.0, 1.0, 0.0, math.sqrt(7))
    pair = SamplePair(a, b, lambda1=2.0, lambda2=math.sqrt(2.0))
    _verify_pair(pair)
    return pair


def construct_pair(
    recipe: PairRecipe,
    Aw22: float = 0.0,
    Bw22: float = 0.0,
    base_alphas: Sequence[float] = _PAPER_ALPHAS,
    Bbeta: float | None = None,
) -> SamplePair:
    """Build and verify a pair from the construction parameters.

    Sample B gets ``s1 = Bs1``, ``s2 = Q Bs1`` and, unless ``Bbeta`` is given,
    ``beta = Bs1 - Abeta / (2 lambda1^2)``.  Sample A is B with its in-plane
    components scaled by ``lambda_i`` and its own ``beta = Abeta``.  The
    in-plane mass is split by ``base_alphas`` and the out-of-plane components
    follow from ``beta = 2 w12^2 - 2 w22^2``.

    Raises
    ------
    InvalidSamplesError
        A sample cannot be realized or fails the validity condition.
    DegenerateCurvesError
        ``u_A = u_B`` (``R = 1``).
    NoIntersectionError
        The curves miss each other inside the patch.
    """
    if Bbeta is None:
        Bbeta = recipe.Bs1 - recipe.Abeta / (2.0 * recipe.lambda1_sq)
    a1, a2 = base_alphas
    lam1 = math.sqrt(recipe.lambda1_sq)
    lam2 = math.sqrt(recipe.R * recipe.lambda1_sq)
    Bs1, Bs2 = recipe.Bs1, recipe.Q * recipe.Bs1

    def out_of_plane(beta, w22, name):
        w12_sq = beta / 2.0 + w22 * w22
        if w12_sq < 0:
            raise InvalidSamplesError(f"sample {name}: beta = {beta:g} needs w12^2 = {w12_sq:g} < 0")
        return math.sqrt(w12_sq)

    r1, r2 = math.sqrt(Bs1), math.sqrt(Bs2)
    b = Sample(
        r1 * math.sin(a1), out_of_plane(Bbeta, Bw22, "B"), r1 * math.cos(a1),
        r2 * math.sin(a2), Bw22, r2 * math.cos(a2),
    )
    a = Sample(
        lam1 * b.w11, out_of_plane(recipe.Abeta, Aw22, "A"), lam1 * b.w13,
        lam2 * b.w21, Aw22, lam2 * b.w23,
    )
    pair = SamplePair(a, b, lam1, lam2)
    _verify_pair(pair)
    return pair


@dataclass
class FalseMinimaReport:
    points: np.ndarray  # (k, 2) theta1, theta2
    objective_values: np.ndarray
    gradient_norms: np.ndarray
    min_distance: float
    cell_origin: tuple[float, float]
    cell_size: float
    patch_point: tuple[float, float]

    @property
    def count(self) -> int:
        return len(self.points)


def _torus_distance(p, q, period: float) -> float:
    d = np.abs(np.asarray(p) - np.asarray(q)) % period
    d = np.minimum(d, period - d)
    return float(np.hypot(*d))


def false_minima_report(
    pair: SamplePair,
    cell_origin: Sequence[float] = (0.0, 0.0),
    cell_size: float = TWO_PI,
) -> FalseMinimaReport:
    """All common zeros of the two curves inside an axis-angle cell.

    The patch crossing ``(x*, y*)`` is unfolded by the reflections
    ``(+-x*, +-y*)`` and ``2 pi`` translations of the ``(x, y)`` plane, then
    mapped to ``theta_i = x_i / 2 - alpha_i``.  Distances are measured on the
    torus of period ``cell_size``, which is a multiple of the landscape period.
    """
    hit = _verify_pair(pair)
    x, y = hit.points[0]
    a1, a2 = pair.sample_a.alpha1, pair.sample_a.alpha2
    o1, o2 = (float(o) for o in cell_origin)
    pts = []
    for sx, sy in itertools.product((1.0, -1.0), repeat=2):
        t1 = (sx * x) / 2 - a1
        t2 = (sy * y) / 2 - a2
        # translate by multiples of pi (2 pi in the doubled angle) into the cell
        for m in range(math.floor((o1 - t1) / math.pi), math.ceil((o1 + cell_size - t1) / math.pi) + 1):
            for n in range(math.floor((o2 - t2) / math.pi), math.ceil((o2 + cell_size - t2) / math.pi) + 1):
                p = (t1 + m * math.pi, t2 + n * math.pi)
                if o1 <= p[0] < o1 + cell_size and o2 <= p[1] < o2 + cell_size:
                    if all(_torus_distance(p, q, cell_size) > 1e-9 for q in pts):
                        pts.append(p)
    pts.sort()
    points = np.array(pts, dtype=float).reshape(-1, 2)
    values = np.array([float(objective(pair.samples, p)) for p in points])
    gnorms = np.array([gradient_multi(pair.samples, p).norm() for p in points])
    dmin = min(
        (_torus_distance(p, q, cell_size) for p, q in itertools.combinations(points, 2)),
        default=math.inf,
    )
    return FalseMinimaReport(points, values, gnorms, dmin, (o1, o2), cell_size, (x, y))


def pair_report(pair: SamplePair, report: FalseMinimaReport | None = None) -> dict:
    """Structured summary for JSON export."""
    report = report or false_minima_report(pair)
    ca, cb = pair.curve_a, pair.curve_b
    hit = pair.intersection()
    return {
        "sample_a": {"w1": list(pair.sample_a.w1), "w2": list(pair.sample_a.w2)},
        "sample_b": {"w1": list(pair.sample_b.w1), "w2": list(pair.sample_b.w2)},
        "lambda1": pair.lambda1,
        "lambda2": pair.lambda2,
        "u_a": ca.u,
        "v_a": ca.v,
        "u_b": cb.u,
        "v_b": cb.v,
        "patch_intersection": {"two_r1": hit.points[0][0], "two_r2": hit.points[0][1],
                               "cos_x": hit.cos_x, "cos_y": hit.cos_y},
        "intersections": [
            {"theta1": float(p[0]), "theta2": float(p[1]), "objective": float(v)}
            for p, v in zip(report.points, report.objective_values)
        ],
        "count": report.count,
        "min_distance": report.min_distance,
        "cell_origin": list(report.cell_origin),
        "cell_size": report.cell_size,
        "objective_scale": objective_scale(pair.samples),
    }


FIGURE_HEADER = ("series",) + CURVE_CSV_HEADER


def figure_rows(pair: SamplePair, n_points: int = 400, report: FalseMinimaReport | None = None):
    """CSV rows: both patch polylines, then the intersection markers."""
    for name, sample in (("curve_a", pair.sample_a), ("curve_b", pair.sample_b)):
        trace = trace_curve(sample, n_points)
        res = on_curve_residual(sample, (trace.theta1, trace.theta2))
        for row in zip(trace.two_r1, trace.two_r2, trace.theta1, trace.theta2, res):
            yield (name, *(float(v) for v in row))
    report = report or false_minima_report(pair)
    for t1, t2 in report.points:
        x = 2 * (t1 + pair.sample_a.alpha1)
        y = 2 * (t2 + pair.sample_a.alpha2)
        res = max(abs(float(on_curve_residual(s, (t1, t2)))) for s in pair.samples)
        yield ("intersection", float(x), float(y), float(t1), float(t2), res)
