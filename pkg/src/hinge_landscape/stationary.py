"""Stationary points of the single-sample objective.

Every stationary point belongs to one of two sets:

* a lattice where ``sin 2r1 = sin 2r2 = 0``, that is
  ``theta_i = -alpha_i + k_i pi / 2``, made of saddles and extrema that the
  second-derivative test resolves by the parities of ``(k1, k2)``;
* the zero curve ``c + s1 cos 2r1 - s2 cos 2r2 = 0``, on which the Hessian
  determinant vanishes but the objective is zero, so every point is a global
  minimum.

Curve geometry is handled in the ``(x, y) = (2 r1, 2 r2)`` plane, where the
zero set is the graph ``cos x = u cos y + v`` with ``u > 0``.  The square
``[0, pi]^2`` (the *patch*) determines the whole curve: the set is invariant
under ``x -> -x``, ``y -> -y`` and translation by ``2 pi`` in either variable.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import calculus
from .errors import EmptyCurveError, NotOnCurveError
from .model import (
    AnglesLike,
    Sample,
    _thetas,
    objective,
    objective_scale,
    residual_scale,
)

__all__ = [
    "Parity",
    "Classification",
    "GridPoint",
    "GridClassification",
    "CanonicalCurve",
    "CurveTrace",
    "CurveMinimality",
    "grid_points",
    "classify_grid_point",
    "grid_hessian_det_closed_form",
    "grid_h11_closed_form",
    "curve_exists",
    "argument_range",
    "canonical",
    "trace_canonical",
    "trace_curve",
    "unfold",
    "on_curve_residual",
    "verify_curve_minimality",
    "classification_tolerances",
    "GRID_CSV_HEADER",
    "CURVE_CSV_HEADER",
    "grid_csv_rows",
    "curve_csv_rows",
]

TWO_PI = 2.0 * math.pi


class Parity(str, enum.Enum):
    """Parities of ``(k1, k2)``; first letter is ``k1``."""

    EE = "EE"
    OE = "OE"
    EO = "EO"
    OO = "OO"

    @classmethod
    def of(cls, k1: int, k2: int) -> "Parity":
        return cls(("E", "O")[k1 % 2] + ("E", "O")[k2 % 2])


class Classification(str, enum.Enum):
    SADDLE = "Saddle"
    MAXIMUM = "Maximum"
    MINIMUM = "Minimum"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class GridClassification:
    classification: Classification
    hessian_det: float
    h11: float
    hessian_det_generic: float


@dataclass(frozen=True)
class GridPoint:
    k1: int
    k2: int
    theta1: float
    theta2: float
    parity_case: Parity
    classification: Classification | None = None
    hessian_det: float = math.nan
    h11: float = math.nan

    @property
    def angles(self) -> tuple[float, float]:
        return (self.theta1, self.theta2)


def classification_tolerances(sample: Sample) -> tuple[float, float]:
    """Zero thresholds ``(for |H|, for h11)`` at lattice points.

    ``|H| = -s1 s2 sign factor**2`` and ``h11 = -s1 factor`` with ``factor``
    linear in ``s1, s2, beta``, so the thresholds carry the same powers of
    the sample magnitude ``m = max(s1, s2, |beta|)``.
    """
    m = max(sample.s1, sample.s2, abs(sample.beta))
    return 1e-9 * sample.s1 * sample.s2 * m * m, 1e-9 * sample.s1 * m


def _grid_factor(sample: Sample, parity: Parity) -> float:
    s1, s2, b = sample.s1, sample.s2, sample.beta
    return {
        Parity.EE: 4 * s1 - 4 * s2 + 2 * b,
        Parity.OE: 4 * s2 - 2 * b,
        Parity.EO: 4 * s1 + 2 * b,
        Parity.OO: -2 * b,
    }[parity]


_GRID_SIGN = {Parity.EE: 1.0, Parity.OE: -1.0, Parity.EO: -1.0, Parity.OO: 1.0}


def grid_hessian_det_closed_form(sample: Sample, parity: Parity) -> float:
    """Hessian determinant at a lattice point: ``-s1 s2 sign * factor**2``."""
    return -sample.s1 * sample.s2 * _GRID_SIGN[parity] * _grid_factor(sample, parity) ** 2


def grid_h11_closed_form(sample: Sample, parity: Parity) -> float:
    return -sample.s1 * _grid_factor(sample, parity)


def classify_grid_point(sample: Sample, point: GridPoint) -> GridClassification:
    """Second-derivative test at a lattice point, using the closed forms.

    The mixed partial vanishes on the lattice, so the determinant is the
    product of the pure partials.  Negative determinant: saddle; positive:
    extremum whose kind follows the sign of ``h11``.
    """
    det = grid_hessian_det_closed_form(sample, point.parity_case)
    h11 = grid_h11_closed_form(sample, point.parity_case)
    det_generic = float(calculus.hessian_det(sample, point.angles))
    tol_det, tol_h11 = classification_tolerances(sample)
    if abs(det) <= tol_det:
        label = Classification.DEGENERATE
    elif det < 0:
        label = Classification.SADDLE
    elif abs(h11) <= tol_h11:
        label = Classification.DEGENERATE
    else:
        label = Classification.MAXIMUM if h11 < 0 else Classification.MINIMUM
    return GridClassification(label, det, h11, det_generic)


def grid_points(sample: Sample, k1_range: Iterable[int], k2_range: Iterable[int]) -> list[GridPoint]:
    """Classified lattice points for every ``(k1, k2)`` in the cartesian product."""
    a1, a2 = sample.alpha1, sample.alpha2
    k2_values = list(k2_range)
    gtol = 1e-10 * calculus.derivative_scale(sample)
    out = []
    for k1 in k1_range:
        for k2 in k2_values:
            t1 = -a1 + k1 * math.pi / 2
            t2 = -a2 + k2 * math.pi / 2
            g = calculus.gradient(sample, (t1, t2))
            if g.norm() > gtol:
                raise AssertionError(f"lattice point ({k1}, {k2}) is not stationary: |grad| = {g.norm():.3e}")
            base = GridPoint(k1, k2, t1, t2, Parity.of(k1, k2))
            cls = classify_grid_point(sample, base)
            out.append(GridPoint(k1, k2, t1, t2, base.parity_case, cls.classification, cls.hessian_det, cls.h11))
    return out


# -- zero curve ------------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalCurve:
    """``cos x = u cos y + v`` with ``u > 0``."""

    u: float
    v: float

    def __post_init__(self):
        if not self.u > 0:
            raise ValueError(f"canonical curve needs u > 0, got {self.u!r}")

    def argument(self, y):
        return self.u * np.cos(y) + self.v

    def residual(self, x, y):
        return np.cos(x) - self.argument(y)

    def exists(self) -> bool:
        """Whether the curve meets the patch (closed: tangency counts)."""
        return self.v - self.u <= 1 and self.v + self.u >= -1


def canonical(sample: Sample) -> CanonicalCurve:
    return CanonicalCurve(sample.s2 / sample.s1, -sample.c / sample.s1)


def argument_range(sample: Sample) -> tuple[float, float]:
    """Range of the arccos argument ``-c/s1 + (s2/s1) cos y`` over all ``y``."""
    lo = -1.0 - sample.beta / sample.s1
    return lo, lo + 2.0 * sample.s2 / sample.s1


def curve_exists(sample: Sample) -> bool:
    """Whether the argument range overlaps ``[-1, 1]`` in more than a point.

    Decided from the argument range alone; agrees with
    :func:`~hinge_landscape.model.is_valid`.
    """
    lo, hi = argument_range(sample)
    return lo < 1.0 and hi > -1.0


@dataclass(frozen=True)
class CurveTrace:
    """Polyline of the zero curve inside the patch.

    ``two_r1`` and ``two_r2`` are the patch coordinates; the ``alpha`` offsets
    convert them to axis angles.
    """

    two_r1: np.ndarray
    two_r2: np.ndarray
    curve: CanonicalCurve
    alpha1: float = 0.0
    alpha2: float = 0.0

    @property
    def theta1(self) -> np.ndarray:
        return self.two_r1 / 2 - self.alpha1

    @property
    def theta2(self) -> np.ndarray:
        return self.two_r2 / 2 - self.alpha2

    def __len__(self) -> int:
        return len(self.two_r2)


def _feasible_interval(curve: CanonicalCurve) -> tuple[float, float]:
    u, v = float(curve.u), float(curve.v)
    if v - u > 1.0 or v + u < -1.0:
        raise EmptyCurveError(f"cos x = {u:g} cos y + {v:g} has no solution in the patch")
    # u cos y + v decreases on [0, pi]; the ends are where it leaves [-1, 1]
    y_lo = 0.0 if u + v <= 1.0 else math.acos(min(1.0, max(-1.0, (1.0 - v) / u)))
    y_hi = math.pi if v - u >= -1.0 else math.acos(min(1.0, max(-1.0, (-1.0 - v) / u)))
    return y_lo, y_hi


def trace_canonical(curve: CanonicalCurve, n_points: int) -> CurveTrace:
    """Sample the patch branch ``x = arccos(u cos y + v)`` at ``n_points`` values of y."""
    if n_points < 2:
        raise ValueError("n_points must be at least 2")
    y_lo, y_hi = _feasible_interval(curve)
    y = np.linspace(y_lo, y_hi, n_points)
    x = np.arccos(np.clip(curve.argument(y), -1.0, 1.0))
    return CurveTrace(x, y, curve)


def trace_curve(sample: Sample, n_points: int) -> CurveTrace:
    if not curve_exists(sample):
        raise EmptyCurveError("sample has no zero curve (validity condition fails)")
    t = trace_canonical(canonical(sample), n_points)
    return CurveTrace(t.two_r1, t.two_r2, t.curve, sample.alpha1, sample.alpha2)


def unfold(
    trace: CurveTrace,
    cell_origin: Sequence[float] = (0.0, 0.0),
    cell_size: float = TWO_PI,
) -> list[np.ndarray]:
    """Copies of the patch branch that fall in an axis-angle window.

    Applies the four reflections ``(+-x, +-y)`` and ``2 pi`` translations in
    the ``(x, y)`` plane, maps to ``theta`` and keeps the parts inside
    ``[o1, o1 + size) x [o2, o2 + size)``.  Returns ``(m, 2)`` arrays of
    ``(theta1, theta2)``, one per contiguous piece.
    """
    o1, o2 = cell_origin
    # theta window -> x window is [2(o1 + a1), 2(o1 + a1 + size))
    xlo, ylo = 2 * (o1 + trace.alpha1), 2 * (o2 + trace.alpha2)
    xhi, yhi = xlo + 2 * cell_size, ylo + 2 * cell_size
    pieces = []
    for sx in (1.0, -1.0):
        for sy in (1.0, -1.0):
            bx, by = sx * trace.two_r1, sy * trace.two_r2
            for m in range(math.floor((xlo - math.pi) / TWO_PI), math.ceil((xhi + math.pi) / TWO_PI) + 1):
                X = bx + m * TWO_PI
                if X.max() < xlo or X.min() >= xhi:
                    continue
                for n in range(math.floor((ylo - math.pi) / TWO_PI), math.ceil((yhi + math.pi) / TWO_PI) + 1):
                    Y = by + n * TWO_PI
                    inside = (X >= xlo) & (X < xhi) & (Y >= ylo) & (Y < yhi)
                    if not inside.any():
                        continue
                    pts = np.column_stack([X / 2 - trace.alpha1, Y / 2 - trace.alpha2])
                    breaks = np.flatnonzero(np.diff(inside.astype(int)) != 0) + 1
                    for chunk, mask in zip(np.split(pts, breaks), np.split(inside, breaks)):
                        if mask[0] and len(chunk):
                            pieces.append(chunk)
    return pieces


def on_curve_residual(sample: Sample, angles: AnglesLike):
    """``c + s1 cos 2r1 - s2 cos 2r2``, twice the per-sample error."""
    theta1, theta2 = _thetas(angles)
    x = 2.0 * (theta1 + sample.alpha1)
    y = 2.0 * (theta2 + sample.alpha2)
    return sample.c + sample.s1 * np.cos(x) - sample.s2 * np.cos(y)


@dataclass(frozen=True)
class CurveMinimality:
    objective_value: float
    hessian_det_value: float
    is_minimum: bool
    hessian_degenerate: bool = field(default=True)


def verify_curve_minimality(sample: Sample, angles: AnglesLike) -> CurveMinimality:
    """Check a zero-curve point: zero objective (hence global minimum), zero |H|.

    Raises :class:`NotOnCurveError` when the point is not on the curve.
    """
    res = float(on_curve_residual(sample, angles))
    if abs(res) > 1e-10 * residual_scale(sample):
        raise NotOnCurveError(f"point is off the zero curve: residual {res:.3e}")
    value = float(objective(sample, angles))
    det = float(calculus.hessian_det(sample, angles))
    return CurveMinimality(
        objective_value=value,
        hessian_det_value=det,
        is_minimum=value <= 1e-12 * objective_scale(sample),
        hessian_degenerate=abs(det) <= 1e-9 * sample.s1**2 * sample.s2**2,
    )


# -- exports ----------------------------------------------------------------------

GRID_CSV_HEADER = ("k1", "k2", "theta1", "theta2", "parity_case", "classification", "hessian_det", "h11")
CURVE_CSV_HEADER = ("two_r1", "two_r2", "theta1", "theta2", "residual")


def grid_csv_rows(points: Sequence[GridPoint]):
    for p in points:
        label = p.classification.value if p.classification else ""
        yield (p.k1, p.k2, p.theta1, p.theta2, p.parity_case.value, label, p.hessian_det, p.h11)


def curve_csv_rows(sample: Sample, trace: CurveTrace):
    res = on_curve_residual(sample, (trace.theta1, trace.theta2))
    for row in zip(trace.two_r1, trace.two_r2, trace.theta1, trace.theta2, res):
        yield tuple(float(v) for v in row)

