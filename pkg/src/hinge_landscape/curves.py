"""Which sides of the patch a canonical curve touches, and where two curves meet.

A curve ``cos x = u cos y + v`` (``u > 0``) is an increasing graph inside the
patch ``[0, pi]^2``, so it is described qualitatively by the patch sides it
meets.  Writing the four tests as

====  ==========  =======================
A     ``x = 0``   ``|1 - v| / u <= 1``
C     ``x = pi``  ``|-1 - v| / u <= 1``
D     ``y = 0``   ``|u + v| <= 1``
F     ``y = pi``  ``|-u + v| <= 1``
====  ==========  =======================

only nine of the sixteen truth assignments occur for curves that meet the
patch at all: the curve enters through A, D or the corner where they meet,
and leaves through C, F or their corner.

The census runs on a rational lattice in exact integer arithmetic.
Tangencies such as ``u + v = 1`` sit exactly on lattice points and would be
lost to rounding in binary floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .stationary import CanonicalCurve, trace_canonical

__all__ = [
    "BoundaryPattern",
    "PatternCensus",
    "Intersection",
    "LABELS",
    "boundary_pattern",
    "geometric_pattern",
    "geometric_patterns",
    "rational_grid",
    "enumerate_patterns",
    "intersect",
    "census_report",
    "witness_polylines",
]

LABELS = ("A", "C", "D", "F")


@dataclass(frozen=True, order=True)
class BoundaryPattern:
    hits_x0: bool
    hits_xpi: bool
    hits_y0: bool
    hits_ypi: bool

    def as_tuple(self) -> tuple[bool, bool, bool, bool]:
        return (self.hits_x0, self.hits_xpi, self.hits_y0, self.hits_ypi)

    @property
    def labels(self) -> list[str]:
        return [lab for lab, hit in zip(LABELS, self.as_tuple()) if hit]

    @property
    def code(self) -> int:
        """Bit code ``8A + 4C + 2D + F``."""
        a, c, d, f = self.as_tuple()
        return 8 * a + 4 * c + 2 * d + f

    @classmethod
    def from_code(cls, code: int) -> "BoundaryPattern":
        code = int(code)
        return cls(bool(code & 8), bool(code & 4), bool(code & 2), bool(code & 1))

    def __str__(self) -> str:
        return "".join(lab if hit else "-" for lab, hit in zip(LABELS, self.as_tuple()))


def _uv(curve) -> tuple:
    if isinstance(curve, CanonicalCurve):
        return curve.u, curve.v
    u, v = curve
    return u, v


def boundary_pattern(curve) -> BoundaryPattern:
    """The four closed-form side tests, evaluated as written.

    Accepts a :class:`CanonicalCurve` or a ``(u, v)`` pair; with
    :class:`fractions.Fraction` inputs the result is exact.
    """
    u, v = _uv(curve)
    if not u > 0:
        raise ValueError("u must be positive")
    return BoundaryPattern(
        abs(1 - v) / u <= 1,
        abs(-1 - v) / u <= 1,
        abs(u + v) <= 1,
        abs(-u + v) <= 1,
    )


def geometric_patterns(u, v, n_samples: int = 10_000, tol: float = 1e-9, chunk: int = 256) -> np.ndarray:
    """Boundary patterns found by scanning the curve itself, as bit codes.

    For each ``(u, v)``, ``y`` is sampled on ``[0, pi]`` (ends included) and
    ``x(y) = arccos(u cos y + v)`` is followed wherever it is defined.  The
    curve meets ``y = 0`` / ``y = pi`` if a curve point exists there, and meets
    ``x = 0`` / ``x = pi`` if ``cos x`` reaches ``1`` / ``-1`` between two
    consecutive samples (intermediate value theorem).  All tests allow ``tol``.
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))
    v = np.atleast_1d(np.asarray(v, dtype=float))
    cy = np.cos(np.linspace(0.0, math.pi, n_samples))
    codes = np.empty(u.shape, dtype=np.int64)
    for start in range(0, len(u), chunk):
        uu = u[start:start + chunk, None]
        vv = v[start:start + chunk, None]
        arg = uu * cy[None, :] + vv
        lo = np.minimum(arg[:, :-1], arg[:, 1:])
        hi = np.maximum(arg[:, :-1], arg[:, 1:])
        x0 = np.any((lo <= 1 + tol) & (hi >= 1 - tol), axis=1)
        xpi = np.any((lo <= -1 + tol) & (hi >= -1 - tol), axis=1)
        y0 = np.abs(arg[:, 0]) <= 1 + tol
        ypi = np.abs(arg[:, -1]) <= 1 + tol
        codes[start:start + chunk] = 8 * x0 + 4 * xpi + 2 * y0 + ypi
    return codes


def geometric_pattern(curve, n_samples: int = 10_000, tol: float = 1e-9) -> BoundaryPattern:
    u, v = _uv(curve)
    return BoundaryPattern.from_code(geometric_patterns([float(u)], [float(v)], n_samples, tol)[0])


def rational_grid(lo, hi, step) -> list[Fraction]:
    """Exact lattice ``lo, lo + step, ..., <= hi``; arguments parsed as decimals."""
    lo, hi, step = (Fraction(str(a)) if isinstance(a, float) else Fraction(a) for a in (lo, hi, step))
    if step <= 0:
        raise ValueError("step must be positive")
    n = math.floor((hi - lo) / step)
    return [lo + k * step for k in range(n + 1)]


def _as_fractions(values: Iterable) -> list[Fraction]:
    return sorted(Fraction(str(x)) if isinstance(x, float) else Fraction(x) for x in values)


@dataclass
class PatternCensus:
    """Distinct patterns realized by curves that meet the patch."""

    witnesses: dict[BoundaryPattern, tuple[Fraction, Fraction]]
    cells: int
    empty_cells: int
    geometric_confirmed: dict[BoundaryPattern, bool] = field(default_factory=dict)

    @property
    def patterns(self) -> list[BoundaryPattern]:
        return sorted(self.witnesses, key=lambda p: p.code)

    @property
    def count(self) -> int:
        return len(self.witnesses)

    @property
    def all_confirmed(self) -> bool:
        return bool(self.geometric_confirmed) and all(self.geometric_confirmed.values())


def enumerate_patterns(
    u_grid: Sequence | None = None,
    v_grid: Sequence | None = None,
    *,
    confirm: bool = True,
    n_samples: int = 10_000,
) -> PatternCensus:
    """Patterns realized over the lattice ``u_grid x v_grid``.

    Defaults: ``u`` in ``(0, 4]`` and ``v`` in ``[-4, 4]`` with step 0.01.
    Cells whose curve misses the patch entirely are counted in
    ``empty_cells`` and contribute no pattern.  Each pattern's witness is the
    lexicographically smallest ``(u, v)`` realizing it; with ``confirm`` the
    witness is re-derived by :func:`geometric_pattern`.
    """
    us = _as_fractions(u_grid if u_grid is not None else rational_grid("0.01", 4, "0.01"))
    vs = _as_fractions(v_grid if v_grid is not None else rational_grid(-4, 4, "0.01"))
    if not us or not vs:
        raise ValueError("grids must be non-empty")
    if us[0] <= 0:
        raise ValueError("u grid must be strictly positive")
    den = reduce(math.lcm, (f.denominator for f in (*us, *vs)), 1)
    U = np.array([int(f * den) for f in us], dtype=np.int64)
    V = np.array([int(f * den) for f in vs], dtype=np.int64)[None, :]

    first: dict[int, tuple[int, int]] = {}
    empty = 0
    rows = 64
    for start in range(0, len(U), rows):
        Ub = U[start:start + rows, None]
        a = np.abs(den - V) <= Ub
        c = np.abs(-den - V) <= Ub
        d = np.abs(Ub + V) <= den
        f = np.abs(V - Ub) <= den
        exists = (V - Ub <= den) & (V + Ub >= -den)
        empty += int((~exists).sum())
        code = np.where(exists, 8 * a + 4 * c + 2 * d + f, -1)
        for value in np.unique(code):
            if value < 0 or value in first:
                continue
            i, j = np.argwhere(code == value)[0]
            first[int(value)] = (start + int(i), int(j))

    census = PatternCensus(
        witnesses={BoundaryPattern.from_code(k): (us[i], vs[j]) for k, (i, j) in sorted(first.items())},
        cells=len(us) * len(vs),
        empty_cells=empty,
    )
    if confirm:
        for pattern, (u, v) in census.witnesses.items():
            census.geometric_confirmed[pattern] = geometric_pattern((u, v), n_samples) == pattern
    return census


def census_report(census: PatternCensus) -> list[dict]:
    return [
        {
            "pattern": list(p.as_tuple()),
            "labels": p.labels,
            "witness_u": float(census.witnesses[p][0]),
            "witness_v": float(census.witnesses[p][1]),
            "witness_exact": [str(census.witnesses[p][0]), str(census.witnesses[p][1])],
            "geometric_confirmed": census.geometric_confirmed.get(p),
        }
        for p in census.patterns
    ]


def witness_polylines(census: PatternCensus, n_points: int = 200):
    """Rows ``(pattern, labels, x, y)`` tracing each witness curve in the patch."""
    for p in census.patterns:
        u, v = census.witnesses[p]
        trace = trace_canonical(CanonicalCurve(float(u), float(v)), n_points)
        for x, y in zip(trace.two_r1, trace.two_r2):
            yield (str(p), "".join(p.labels), float(x), float(y))


@dataclass(frozen=True)
class Intersection:
    """Patch intersections of two canonical curves.

    ``coincident`` is set when the curves are identical; ``points`` is then
    empty because every curve point qualifies.
    """

    points: tuple[tuple[float, float], ...]
    coincident: bool = False
    cos_x: float | None = None
    cos_y: float | None = None

    def __bool__(self) -> bool:
        return self.coincident or bool(self.points)


def intersect(a: CanonicalCurve, b: CanonicalCurve) -> Intersection:
    """Solve ``u_a cos y + v_a = u_b cos y + v_b`` inside the patch.

    The curves are monotone graphs in the patch, so there is at most one
    crossing unless they coincide.
    """
    if a.u == b.u:
        return Intersection((), coincident=(a.v == b.v))
    cy = (b.v - a.v) / (a.u - b.u)
    if abs(cy) > 1:
        return Intersection(())
    cx = a.u * cy + a.v
    if abs(cx) > 1:
        return Intersection(())
    return Intersection(((math.acos(cx), math.acos(cy)),), cos_x=cx, cos_y=cy)
