"""First and second derivatives of the hinge objective.

Three independent routes are provided and cross-checked in the test suite:

* compact phasor forms in ``x = 2 r1`` and ``y = 2 r2`` (:func:`gradient`,
  :func:`hessian`),
* fully expanded trigonometric forms (:func:`gradient_expanded`,
  :func:`hessian_expanded`),
* the unsimplified symbolic expressions in raw sample components
  (:func:`raw_gradient_theta1`, :func:`raw_hessian_theta1`,
  :func:`raw_hessian_det`),

plus central finite differences of :func:`~hinge_landscape.model.objective`.
Multi-sample derivatives are sums of per-sample ones.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np
from numpy import cos, sin

from .model import AnglesLike, Sample, SamplesLike, _thetas, as_sample_list, objective

__all__ = [
    "Gradient",
    "Hessian",
    "gradient",
    "gradient_expanded",
    "gradient_multi",
    "hessian",
    "hessian_expanded",
    "hessian_multi",
    "hessian_det",
    "hessian_det_terms",
    "raw_gradient_theta1",
    "raw_hessian_theta1",
    "raw_hessian_det",
    "fd_gradient",
    "fd_hessian",
    "fd_mixed_partials",
    "derivative_scale",
]

# Set HINGE_LANDSCAPE_DEBUG=1 to cross-check compact against expanded forms on
# every hessian() call.
_DEBUG = os.environ.get("HINGE_LANDSCAPE_DEBUG", "") not in ("", "0")


@dataclass(frozen=True)
class Gradient:
    dO_dtheta1: float
    dO_dtheta2: float

    def as_array(self) -> np.ndarray:
        return np.array([self.dO_dtheta1, self.dO_dtheta2], dtype=float)

    def norm(self) -> float:
        return math.hypot(self.dO_dtheta1, self.dO_dtheta2)

    def __add__(self, other: "Gradient") -> "Gradient":
        return Gradient(self.dO_dtheta1 + other.dO_dtheta1, self.dO_dtheta2 + other.dO_dtheta2)


@dataclass(frozen=True)
class Hessian:
    """Symmetric 2x2 Hessian; the mixed partial is stored once."""

    h11: float
    h12: float
    h22: float

    @property
    def left(self) -> float:
        """Product of the pure second partials."""
        return self.h11 * self.h22

    @property
    def right(self) -> float:
        """Square of the mixed partial."""
        return self.h12 * self.h12

    @property
    def det(self) -> float:
        return self.left - self.right

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.h11, self.h12], [self.h12, self.h22]], dtype=float)

    def __add__(self, other: "Hessian") -> "Hessian":
        return Hessian(self.h11 + other.h11, self.h12 + other.h12, self.h22 + other.h22)


def _phases(sample: Sample, angles: AnglesLike):
    theta1, theta2 = _thetas(angles)
    return 2.0 * (theta1 + sample.alpha1), 2.0 * (theta2 + sample.alpha2)


def derivative_scale(sample: Sample) -> float:
    """Typical magnitude of first and second partials of one sample's objective."""
    return max(sample.s1, sample.s2) * (sample.s1 + sample.s2 + abs(sample.c))


# -- gradient ------------------------------------------------------------------


def gradient(sample: Sample, angles: AnglesLike) -> Gradient:
    """``(-2 s1 d sin 2r1, 2 s2 d sin 2r2)``."""
    x, y = _phases(sample, angles)
    s1, s2 = sample.s1, sample.s2
    d = 0.5 * (sample.c + s1 * cos(x) - s2 * cos(y))
    return Gradient(-2.0 * s1 * d * sin(x), 2.0 * s2 * d * sin(y))


def gradient_expanded(sample: Sample, angles: AnglesLike) -> Gradient:
    """Gradient with the error term multiplied out into products of sines and cosines."""
    x, y = _phases(sample, angles)
    s1, s2, c = sample.s1, sample.s2, sample.c
    g1 = -s1 * (c * sin(x) + 0.5 * s1 * sin(2 * x) - s2 * sin(x) * cos(y))
    g2 = s2 * (c * sin(y) + s1 * cos(x) * sin(y) - 0.5 * s2 * sin(2 * y))
    return Gradient(g1, g2)


def gradient_multi(samples: SamplesLike, angles: AnglesLike) -> Gradient:
    total = Gradient(0.0, 0.0)
    for sample in as_sample_list(samples):
        total = total + gradient(sample, angles)
    return total


# -- Hessian -------------------------------------------------------------------


def _hessian_compact(sample: Sample, angles: AnglesLike) -> Hessian:
    x, y = _phases(sample, angles)
    s1, s2 = sample.s1, sample.s2
    d = 0.5 * (sample.c + s1 * cos(x) - s2 * cos(y))
    h11 = (-2.0 * s1) * (-0.5 * s1 + 2.0 * d * cos(x) + 0.5 * s1 * cos(2 * x))
    h22 = (2.0 * s2) * (0.5 * s2 + 2.0 * d * cos(y) - 0.5 * s2 * cos(2 * y))
    h12 = -2.0 * s1 * s2 * sin(x) * sin(y)
    return Hessian(h11, h12, h22)


def hessian_expanded(sample: Sample, angles: AnglesLike) -> Hessian:
    x, y = _phases(sample, angles)
    s1, s2, c = sample.s1, sample.s2, sample.c
    h11 = (-2.0 * s1) * (c * cos(x) + s1 * cos(2 * x) - s2 * cos(x) * cos(y))
    h22 = (2.0 * s2) * (c * cos(y) - s2 * cos(2 * y) + s1 * cos(x) * cos(y))
    h12 = -2.0 * s1 * s2 * sin(x) * sin(y)
    return Hessian(h11, h12, h22)


def hessian(sample: Sample, angles: AnglesLike) -> Hessian:
    h = _hessian_compact(sample, angles)
    if _DEBUG:
        e = hessian_expanded(sample, angles)
        tol = 1e-10 * derivative_scale(sample)
        assert np.all(np.abs(np.asarray(h.h11) - e.h11) <= tol), "h11 compact/expanded mismatch"
        assert np.all(np.abs(np.asarray(h.h22) - e.h22) <= tol), "h22 compact/expanded mismatch"
    return h


def hessian_multi(samples: SamplesLike, angles: AnglesLike) -> Hessian:
    total = Hessian(0.0, 0.0, 0.0)
    for sample in as_sample_list(samples):
        total = total + hessian(sample, angles)
    return total


def hessian_det_terms(sample: Sample, angles: AnglesLike) -> tuple[float, float]:
    """``(h11 * h22, h12**2)``, the two terms whose difference is the determinant."""
    h = hessian(sample, angles)
    return h.left, h.right


def hessian_det(sample: Sample, angles: AnglesLike):
    left, right = hessian_det_terms(sample, angles)
    return left - right


# -- raw symbolic expressions --------------------------------------------------
# Transcribed term for term, without simplification.


def raw_gradient_theta1(sample: Sample, angles: AnglesLike):
    w11, w12, w13, w21, w22, w23 = sample.as_tuple()
    θ1, θ2 = _thetas(angles)
    return (2*(w11*sin(θ1) - w13*cos(θ1))*(2*w11*cos(θ1)
            + 2*w13*sin(θ1))*(w12**2 - w22**2 + (w11*sin(θ1)
            - w13*cos(θ1))**2 - (w21*sin(θ2) - w23*cos(θ2))**2))


def raw_hessian_theta1(sample: Sample, angles: AnglesLike):
    w11, w12, w13, w21, w22, w23 = sample.as_tuple()
    θ1, θ2 = _thetas(angles)
    return (2*(-2*w11*sin(θ1) + 2*w13*cos(θ1))*(w11*sin(θ1)
            - w13*cos(θ1))*(w12**2 - w22**2 + (w11*sin(θ1)
            - w13*cos(θ1))**2 - (w21*sin(θ2) - w23*cos(θ2)
            )**2) + 2*(w11*sin(θ1) - w13*cos(θ1))**2*(2*w11*cos(θ1)
            + 2*w13*sin(θ1))**2 + 2*(w11*cos(θ1) + w13*sin(θ1)
            )*(2*w11*cos(θ1) + 2*w13*sin(θ1))*(w12**2 - w22**2 + (w11*sin(θ1)
            - w13*cos(θ1))**2 - (w21*sin(θ2) - w23*cos(θ2))**2))


def raw_hessian_det(sample: Sample, angles: AnglesLike):
    w11, w12, w13, w21, w22, w23 = sample.as_tuple()
    θ1, θ2 = _thetas(angles)
    return (-4*(w11*sin(θ1) - w13*cos(θ1))**2*(2*w11*cos(θ1)
            + 2*w13*sin(θ1))**2*(w21*sin(θ2) - w23*cos(θ2)
            )**2*(2*w21*cos(θ2) + 2*w23*sin(θ2))**2 + (2*(-2*w11*sin(θ1)
            + 2*w13*cos(θ1))*(w11*sin(θ1) - w13*cos(θ1)
            )*(w12**2 - w22**2 + (w11*sin(θ1) - w13*cos(θ1)
            )**2 - (w21*sin(θ2) - w23*cos(θ2))**2) + 2*(w11*sin(θ1)
            - w13*cos(θ1))**2*(2*w11*cos(θ1) + 2*w13*sin(θ1)
            )**2 + 2*(w11*cos(θ1) + w13*sin(θ1))*(2*w11*cos(θ1)
            + 2*w13*sin(θ1))*(w12**2 - w22**2 + (w11*sin(θ1)
            - w13*cos(θ1))**2 - (w21*sin(θ2) - w23*cos(θ2)
            )**2))*(-2*(-2*w21*sin(θ2) + 2*w23*cos(θ2)
            )*(w21*sin(θ2) - w23*cos(θ2))*(w12**2 - w22**2 + (w11*sin(θ1)
            - w13*cos(θ1))**2 - (w21*sin(θ2) - w23*cos(θ2)
            )**2) + 2*(w21*sin(θ2) - w23*cos(θ2))**2*(2*w21*cos(θ2)
            + 2*w23*sin(θ2))**2 - 2*(w21*cos(θ2) + w23*sin(θ2)
            )*(2*w21*cos(θ2) + 2*w23*sin(θ2))*(w12**2 - w22**2 + (w11*sin(θ1)
            - w13*cos(θ1))**2 - (w21*sin(θ2) - w23*cos(θ2))**2)))


# -- finite differences --------------------------------------------------------


def fd_gradient(samples: SamplesLike, angles: AnglesLike, h: float = 1e-5) -> Gradient:
    """Central-difference gradient of the objective."""
    if h <= 0:
        raise ValueError("step h must be positive")
    samples = as_sample_list(samples)
    t1, t2 = (float(a) for a in _thetas(angles))
    g1 = (objective(samples, (t1 + h, t2)) - objective(samples, (t1 - h, t2))) / (2 * h)
    g2 = (objective(samples, (t1, t2 + h)) - objective(samples, (t1, t2 - h))) / (2 * h)
    return Gradient(float(g1), float(g2))


def fd_mixed_partials(samples: SamplesLike, angles: AnglesLike, h: float = 1e-4) -> tuple[float, float]:
    """Mixed partial by nested central differences taken in both orders.

    Returns ``(d/dtheta2 (dO/dtheta1), d/dtheta1 (dO/dtheta2))``.
    """
    if h <= 0:
        raise ValueError("step h must be positive")
    samples = as_sample_list(samples)
    t1, t2 = (float(a) for a in _thetas(angles))

    def f(a, b):
        return float(objective(samples, (a, b)))

    def d1(b):
        return (f(t1 + h, b) - f(t1 - h, b)) / (2 * h)

    def d2(a):
        return (f(a, t2 + h) - f(a, t2 - h)) / (2 * h)

    h12 = (d1(t2 + h) - d1(t2 - h)) / (2 * h)
    h21 = (d2(t1 + h) - d2(t1 - h)) / (2 * h)
    return h12, h21


def fd_hessian(samples: SamplesLike, angles: AnglesLike, h: float = 1e-4) -> Hessian:
    """Central second differences of the objective.

    The default step is larger than the gradient's because second differences
    lose accuracy as ``eps / h**2``.
    """
    if h <= 0:
        raise ValueError("step h must be positive")
    samples = as_sample_list(samples)
    t1, t2 = (float(a) for a in _thetas(angles))

    def f(a, b):
        return float(objective(samples, (a, b)))

    f0 = f(t1, t2)
    h11 = (f(t1 + h, t2) - 2 * f0 + f(t1 - h, t2)) / (h * h)
    h22 = (f(t1, t2 + h) - 2 * f0 + f(t1, t2 - h)) / (h * h)
    h12, h21 = fd_mixed_partials(samples, (t1, t2), h)
    return Hessian(h11, 0.5 * (h12 + h21), h22)
