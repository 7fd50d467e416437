"""Damped Gauss-Newton minimization of the hinge objective, and multi-start search.

The residual of sample ``s`` is its error ``d_s`` itself, so the objective is
exactly ``sum(d_s**2)`` and the residual Jacobian rows are
``(-s1 sin 2r1, s2 sin 2r2)``.  Steps solve ``(J^T J + lam I) dx = -J^T d``;
``lam`` is divided by 10 after an accepted step and multiplied by 10 after a
rejected one.  A step is accepted when it lowers the objective, or leaves it
unchanged while lowering the gradient norm.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .model import Angles, AnglesLike, Sample, SamplesLike, _thetas, as_sample_list, objective, objective_scale

__all__ = [
    "Termination",
    "SolveOptions",
    "SolveResult",
    "Minimum",
    "residuals_and_jacobian",
    "solve",
    "start_grid",
    "cluster_minima",
    "default_cluster_threshold",
    "multistart",
    "MINIMA_CSV_HEADER",
    "minima_csv_rows",
]

TWO_PI = 2.0 * math.pi


class Termination(str, enum.Enum):
    GRADIENT_SMALL = "GradientSmall"
    STEP_SMALL = "StepSmall"
    MAX_ITERATIONS = "MaxIterations"


@dataclass(frozen=True)
class SolveOptions:
    max_iterations: int = 100
    gradient_tolerance: float = 1e-10
    step_tolerance: float = 1e-12
    initial_damping: float = 1e-3

    def __post_init__(self):
        for name in ("max_iterations", "gradient_tolerance", "step_tolerance", "initial_damping"):
            if not getattr(self, name) > 0:
                raise ValueError(f"SolveOptions.{name} must be positive")


@dataclass(frozen=True)
class SolveResult:
    angles: Angles
    objective_value: float
    iterations: int
    converged: bool
    termination: Termination
    gradient_norm: float
    start: Angles
    history: tuple[float, ...] = field(default=(), repr=False)


class _Packed:
    """Per-sample constants as arrays, for fast repeated evaluation."""

    def __init__(self, samples: Sequence[Sample]):
        self.s1 = np.array([s.s1 for s in samples])
        self.s2 = np.array([s.s2 for s in samples])
        self.c = np.array([s.c for s in samples])
        self.a1 = np.array([s.alpha1 for s in samples])
        self.a2 = np.array([s.alpha2 for s in samples])

    def evaluate(self, t1: float, t2: float):
        x = 2.0 * (t1 + self.a1)
        y = 2.0 * (t2 + self.a2)
        d = 0.5 * (self.c + self.s1 * np.cos(x) - self.s2 * np.cos(y))
        J = np.column_stack([-self.s1 * np.sin(x), self.s2 * np.sin(y)])
        return d, J


def residuals_and_jacobian(samples: SamplesLike, angles: AnglesLike) -> tuple[np.ndarray, np.ndarray]:
    """Residual vector ``d`` (length n) and its ``n x 2`` Jacobian.

    ``2 J^T d`` is the gradient of the objective.
    """
    t1, t2 = _thetas(angles)
    return _Packed(as_sample_list(samples)).evaluate(float(t1), float(t2))


def _solve2(a11, a12, a22, b1, b2):
    det = a11 * a22 - a12 * a12
    return (a22 * b1 - a12 * b2) / det, (a11 * b2 - a12 * b1) / det


def solve(samples: SamplesLike, start: AnglesLike, opts: SolveOptions | None = None) -> SolveResult:
    """Levenberg-Marquardt descent from ``start``.

    The objective never increases across accepted steps.  A stationary start
    (for example a lattice maximum) is returned as is with
    ``GradientSmall``; no attempt is made to escape it.
    """
    opts = opts or SolveOptions()
    samples = as_sample_list(samples)
    packed = _Packed(samples)
    gtol = opts.gradient_tolerance * (1.0 + objective_scale(samples))
    t = np.array([float(a) for a in _thetas(start)])
    d, J = packed.evaluate(*t)
    f = float(d @ d)
    jtd = J.T @ d
    jtj = J.T @ J
    # damping is in units of J^T J so that it means the same for any sample magnitude
    lam = opts.initial_damping * max(1.0, 0.5 * float(np.trace(jtj)))
    history = [f]
    iterations = 0
    termination = Termination.MAX_ITERATIONS
    while True:
        gnorm = 2.0 * math.hypot(*jtd)
        if gnorm <= gtol:
            termination = Termination.GRADIENT_SMALL
            break
        if iterations >= opts.max_iterations:
            break
        step = np.array(_solve2(jtj[0, 0] + lam, jtj[0, 1], jtj[1, 1] + lam, -jtd[0], -jtd[1]))
        if math.hypot(*step) <= opts.step_tolerance * (1.0 + math.hypot(*t)):
            termination = Termination.STEP_SMALL
            break
        iterations += 1
        trial = t + step
        d_new, J_new = packed.evaluate(*trial)
        f_new = float(d_new @ d_new)
        jtd_new = J_new.T @ d_new
        # at a nonzero minimum the objective stalls at rounding level before the
        # gradient does; a tie is accepted only if the gradient shrinks
        if f_new < f or (f_new == f and math.hypot(*jtd_new) < math.hypot(*jtd)):
            t, d, J, f = trial, d_new, J_new, f_new
            jtd = jtd_new
            jtj = J.T @ J
            lam = max(lam / 10.0, 1e-300)
            history.append(f)
        else:
            lam *= 10.0
    gnorm = 2.0 * math.hypot(*jtd)
    return SolveResult(
        angles=Angles(float(t[0]), float(t[1])),
        objective_value=float(objective(samples, (t[0], t[1]))),
        iterations=iterations,
        converged=gnorm <= gtol,
        termination=termination,
        gradient_norm=gnorm,
        start=Angles(*(float(a) for a in _thetas(start))),
        history=tuple(history),
    )


# -- multi-start -----------------------------------------------------------------


@dataclass(frozen=True)
class Minimum:
    angles: Angles
    objective: float
    basin_count: int


def default_cluster_threshold(samples: SamplesLike) -> float:
    """Objective level below which a converged point counts as a zero."""
    return 1e-10 * (1.0 + sum(s.s1 * s.s2 for s in as_sample_list(samples)))


def start_grid(
    density: int,
    cell_origin: Sequence[float] = (0.0, 0.0),
    cell_size: float = TWO_PI,
    seed: int | None = None,
    jitter: float = 0.0,
) -> np.ndarray:
    """``density**2`` cell-centred starts; ``jitter`` is a fraction of the spacing."""
    if density < 1:
        raise ValueError("density must be positive")
    h = cell_size / density
    centres = (np.arange(density) + 0.5) * h
    g1, g2 = np.meshgrid(cell_origin[0] + centres, cell_origin[1] + centres, indexing="ij")
    pts = np.column_stack([g1.ravel(), g2.ravel()])
    if jitter > 0:
        rng = np.random.default_rng(seed)
        pts = pts + rng.uniform(-0.5, 0.5, size=pts.shape) * jitter * h
    return pts


def _wrap_into(theta: np.ndarray, origin: Sequence[float], size: float) -> np.ndarray:
    o = np.asarray(origin, dtype=float)
    return o + np.mod(theta - o, size)


def _torus_distance(p: np.ndarray, q: np.ndarray, period: float) -> float:
    d = np.abs(p - q) % period
    d = np.minimum(d, period - d)
    return float(np.hypot(d[0], d[1]))


def cluster_minima(
    results: Iterable[SolveResult],
    threshold: float,
    merge_radius: float = 1e-4,
    cell_origin: Sequence[float] = (0.0, 0.0),
    cell_size: float = TWO_PI,
) -> list[Minimum]:
    """Merge converged results below ``threshold`` that lie within ``merge_radius``.

    Angles are wrapped into the cell and compared on the torus.  The output
    does not depend on the order of ``results``: candidates are sorted before
    the greedy merge, each cluster is represented by its lowest member, and
    clusters are returned sorted by representative.
    """
    cand = []
    for r in results:
        if not r.converged or not r.objective_value <= threshold:
            continue
        p = _wrap_into(r.angles.as_array(), cell_origin, cell_size)
        cand.append((r.objective_value, float(p[0]), float(p[1])))
    cand.sort()
    clusters: list[list] = []  # [rep_point, objective, count]
    for value, t1, t2 in cand:
        p = np.array([t1, t2])
        for cl in clusters:
            if _torus_distance(cl[0], p, cell_size) <= merge_radius:
                cl[2] += 1
                break
        else:
            clusters.append([p, value, 1])
    out = [Minimum(Angles(float(p[0]), float(p[1])), float(v), n) for p, v, n in clusters]
    # rounding keeps the listing stable when representatives differ only by solver noise
    out.sort(key=lambda m: (round(m.angles.theta1, 6), round(m.angles.theta2, 6)))
    return out


def multistart(
    samples: SamplesLike,
    grid_density: int,
    opts: SolveOptions | None = None,
    *,
    seed: int | None = None,
    jitter: float = 0.0,
    cell_origin: Sequence[float] = (0.0, 0.0),
    cell_size: float = TWO_PI,
    cluster_threshold: float | None = None,
    merge_radius: float = 1e-4,
    map_fn: Callable | None = None,
    return_results: bool = False,
):
    """Solve from a ``grid_density x grid_density`` grid over one cell and cluster.

    ``map_fn`` may be an executor's ``map`` to run starts concurrently; the
    clustering is order-independent, so the output is the same either way.
    With ``return_results`` the individual :class:`SolveResult` list is
    returned as a second value.
    """
    if grid_density < 4:
        raise ValueError("grid_density must be at least 4")
    samples = as_sample_list(samples)
    starts = start_grid(grid_density, cell_origin, cell_size, seed=seed, jitter=jitter)
    job = functools.partial(_solve_start, samples, opts or SolveOptions())
    results = list((map_fn or map)(job, [tuple(p) for p in starts]))
    threshold = default_cluster_threshold(samples) if cluster_threshold is None else cluster_threshold
    minima = cluster_minima(results, threshold, merge_radius, cell_origin, cell_size)
    return (minima, results) if return_results else minima


def _solve_start(samples, opts, start):
    return solve(samples, start, opts)


MINIMA_CSV_HEADER = ("theta1", "theta2", "objective", "basin_count")


def minima_csv_rows(minima: Sequence[Minimum]):
    for m in minima:
        yield (m.angles.theta1, m.angles.theta2, m.objective, m.basin_count)
