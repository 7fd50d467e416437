"""Sample data model and the closed-form pieces of the hinge objective.

A sample is a pair of angular-velocity vectors ``w1`` and ``w2``, one per sensor
frame.  For a candidate pair of axis angles ``(theta1, theta2)`` the per-sample
error is the difference of the squared rejections of ``w1`` and ``w2`` from
their respective hinge axes ``j(theta) = (cos theta, 0, sin theta)``::

    p(theta, w) = (w[0] sin theta - w[2] cos theta)**2 + w[1]**2
    d = p(theta1, w1) - p(theta2, w2)
    O = sum(d**2)

Writing ``r_i = theta_i + atan2(w_i1, w_i3)`` collapses everything onto
``cos(2 r_i)``, which is what the rest of the package works with.

All angle arguments accept floats or numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from .errors import DegenerateSampleError

__all__ = [
    "Angles",
    "Sample",
    "SampleSet",
    "s_of",
    "alpha_of",
    "r_of",
    "t_of",
    "t_phasor",
    "p_of",
    "d_of",
    "d_phasor",
    "c_of",
    "beta_of",
    "objective",
    "is_valid",
    "validity_margins",
    "objective_scale",
    "residual_scale",
    "as_sample_list",
]


@dataclass(frozen=True)
class Angles:
    """Axis angles in radians.  No range restriction."""

    theta1: float
    theta2: float

    def __iter__(self) -> Iterator[float]:
        yield self.theta1
        yield self.theta2

    def as_array(self) -> np.ndarray:
        return np.array([self.theta1, self.theta2], dtype=float)


AnglesLike = Union[Angles, Sequence[float], np.ndarray]


def _thetas(angles: AnglesLike):
    if isinstance(angles, Angles):
        return angles.theta1, angles.theta2
    theta1, theta2 = angles
    return theta1, theta2


@dataclass(frozen=True)
class Sample:
    """One six-component measurement ``(w11, w12, w13, w21, w22, w23)``.

    Construction rejects non-finite components and half-samples with
    ``w_i1 = w_i3 = 0``; for those the grid of stationary points is undefined.
    """

    w11: float
    w12: float
    w13: float
    w21: float
    w22: float
    w23: float

    def __post_init__(self):
        for name in ("w11", "w12", "w13", "w21", "w22", "w23"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise DegenerateSampleError(f"component {name} is not finite: {value!r}")
            object.__setattr__(self, name, value)
        if self.w11 == 0.0 and self.w13 == 0.0:
            raise DegenerateSampleError("s1 = w11^2 + w13^2 must be positive (w11 = w13 = 0)")
        if self.w21 == 0.0 and self.w23 == 0.0:
            raise DegenerateSampleError("s2 = w21^2 + w23^2 must be positive (w21 = w23 = 0)")

    @classmethod
    def from_vectors(cls, w1: Sequence[float], w2: Sequence[float]) -> "Sample":
        if len(w1) != 3 or len(w2) != 3:
            raise DegenerateSampleError("w1 and w2 must have exactly three components")
        return cls(*w1, *w2)

    @property
    def w1(self) -> tuple[float, float, float]:
        return (self.w11, self.w12, self.w13)

    @property
    def w2(self) -> tuple[float, float, float]:
        return (self.w21, self.w22, self.w23)

    @property
    def s1(self) -> float:
        return s_of(self.w1)

    @property
    def s2(self) -> float:
        return s_of(self.w2)

    @property
    def alpha1(self) -> float:
        return alpha_of(self.w1)

    @property
    def alpha2(self) -> float:
        return alpha_of(self.w2)

    @property
    def c(self) -> float:
        return c_of(self)

    @property
    def beta(self) -> float:
        return beta_of(self)

    @property
    def norm1_sq(self) -> float:
        return self.w11**2 + self.w12**2 + self.w13**2

    @property
    def norm2_sq(self) -> float:
        return self.w21**2 + self.w22**2 + self.w23**2

    def scaled(self, factor: float) -> "Sample":
        return Sample(*(factor * w for w in (*self.w1, *self.w2)))

    def as_tuple(self) -> tuple[float, ...]:
        return (*self.w1, *self.w2)


@dataclass(frozen=True)
class SampleSet:
    """Ordered, non-empty collection of samples."""

    samples: tuple[Sample, ...]

    def __init__(self, samples: Iterable[Sample]):
        samples = tuple(samples)
        if not samples:
            raise ValueError("a SampleSet needs at least one sample")
        object.__setattr__(self, "samples", samples)

    @property
    def n(self) -> int:
        return len(self.samples)

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self) -> Iterator[Sample]:
        return iter(self.samples)

    def __getitem__(self, index):
        return self.samples[index]


SamplesLike = Union[Sample, SampleSet, Iterable[Sample]]


def as_sample_list(samples: SamplesLike) -> list[Sample]:
    """Normalize a single sample, a SampleSet or an iterable to a list."""
    if isinstance(samples, Sample):
        return [samples]
    out = list(samples)
    if not out:
        raise ValueError("at least one sample is required")
    return out


# -- half-sample building blocks ------------------------------------------------


def s_of(w: Sequence[float]) -> float:
    """In-plane energy ``w[0]**2 + w[2]**2``; the middle component is ignored."""
    return w[0] * w[0] + w[2] * w[2]


def alpha_of(w: Sequence[float]) -> float:
    """Phase offset ``atan2(w[0], w[2])`` in (-pi, pi]."""
    if w[0] == 0 and w[2] == 0:
        raise DegenerateSampleError("alpha is undefined for w_i1 = w_i3 = 0")
    return math.atan2(w[0], w[2])


def r_of(theta, w: Sequence[float]):
    return theta + alpha_of(w)


def t_of(theta, w: Sequence[float]):
    """``w[0] sin(theta) - w[2] cos(theta)``, the signed in-plane rejection."""
    return w[0] * np.sin(theta) - w[2] * np.cos(theta)


def t_phasor(theta, w: Sequence[float]):
    """Single-cosine form of :func:`t_of`.

    With ``alpha = atan2(w[0], w[2])`` the identity reads
    ``w[0] sin x - w[2] cos x = -sqrt(s) cos(x + alpha)``.  The sign is
    immaterial downstream, where only ``t**2`` and ``cos(2 r)`` appear.
    """
    return -math.sqrt(s_of(w)) * np.cos(r_of(theta, w))


def p_of(theta, w: Sequence[float]):
    """Squared rejection of ``w`` from ``j(theta)``; lies in ``[w[1]**2, |w|**2]``."""
    t = t_of(theta, w)
    return t * t + w[1] * w[1]


# -- whole-sample quantities ----------------------------------------------------


def c_of(sample: Sample) -> float:
    return sample.s1 + 2.0 * sample.w12**2 - sample.s2 - 2.0 * sample.w22**2


def beta_of(sample: Sample) -> float:
    return 2.0 * sample.w12**2 - 2.0 * sample.w22**2


def d_of(sample: Sample, angles: AnglesLike):
    """Per-sample error ``p(theta1, w1) - p(theta2, w2)``."""
    theta1, theta2 = _thetas(angles)
    return p_of(theta1, sample.w1) - p_of(theta2, sample.w2)


def d_phasor(sample: Sample, angles: AnglesLike):
    """Per-sample error as ``(c + s1 cos 2r1 - s2 cos 2r2) / 2``."""
    theta1, theta2 = _thetas(angles)
    x = 2.0 * (theta1 + sample.alpha1)
    y = 2.0 * (theta2 + sample.alpha2)
    return 0.5 * (sample.c + sample.s1 * np.cos(x) - sample.s2 * np.cos(y))


def objective(samples: SamplesLike, angles: AnglesLike):
    """Sum of squared per-sample errors."""
    total = 0.0
    for sample in as_sample_list(samples):
        d = d_of(sample, angles)
        total = total + d * d
    return total


def validity_margins(sample: Sample) -> tuple[float, float]:
    """Slack of the two validity inequalities.

    Returns ``(|w2|^2 - w12^2, |w1|^2 - w22^2)``; the sample is valid iff both
    are strictly positive.  The first closes the range gap ``min p1 <= max p2``,
    the second ``min p2 <= max p1``.
    """
    return (sample.norm2_sq - sample.w12**2, sample.norm1_sq - sample.w22**2)


def is_valid(sample: Sample) -> bool:
    """True when the zero curve exists and the odd/even grid extrema are maxima."""
    m1, m2 = validity_margins(sample)
    return m1 > 0.0 and m2 > 0.0


def objective_scale(samples: SamplesLike) -> float:
    """Upper bound of the objective over all angles; used to scale tolerances."""
    return float(sum((s.norm1_sq + s.norm2_sq) ** 2 for s in as_sample_list(samples)))


def residual_scale(sample: Sample) -> float:
    """Magnitude scale of ``c + s1 cos x - s2 cos y``."""
    return sample.s1 + sample.s2 + abs(sample.c)
