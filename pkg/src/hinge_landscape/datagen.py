"""Synthetic samples that are consistent with a known hinge configuration.

A vector ``g`` splits about the unit axis ``j(theta)`` into a parallel part
and a rejection, and the squared rejection is exactly ``p(theta, g)``::

    |g|^2 - (g . j)^2 = (g[0] sin theta - g[2] cos theta)^2 + g[1]^2

An exact sample therefore only needs ``w2`` to have the same rejection
magnitude about ``j(theta2)`` as ``w1`` has about ``j(theta1)``.  The
parallel part of ``w2`` and the direction of its rejection are free.  The two
frames are unknown to each other, so only the magnitudes are matched.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .model import Sample, SampleSet, p_of

__all__ = [
    "HingeTruth",
    "DatagenConfig",
    "GeneratedSet",
    "axis",
    "rejection_decomposition",
    "generate",
]


def axis(theta: float) -> np.ndarray:
    """Hinge axis ``(cos theta, 0, sin theta)``."""
    return np.array([math.cos(theta), 0.0, math.sin(theta)])


@dataclass(frozen=True)
class HingeTruth:
    theta1_true: float
    theta2_true: float

    def __post_init__(self):
        if not (math.isfinite(self.theta1_true) and math.isfinite(self.theta2_true)):
            raise ValueError("true angles must be finite")


@dataclass(frozen=True)
class DatagenConfig:
    """Generator settings.

    Every ``w1`` component and the parallel part of ``w2`` have magnitudes
    drawn uniformly from ``magnitude_range`` with a random sign, so a positive
    lower bound keeps both in-plane energies away from zero.
    """

    truth: HingeTruth
    count: int = 5
    noise_sigma: float = 0.0
    seed: int = 0
    magnitude_range: tuple[float, float] = (0.5, 5.0)

    def __post_init__(self):
        lo, hi = self.magnitude_range
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if not self.noise_sigma >= 0:
            raise ValueError("noise_sigma must be non-negative")
        if not lo > 0:
            raise ValueError("magnitude_range lower bound must be positive; s_i = 0 would be possible")
        if not hi >= lo or not math.isfinite(hi):
            raise ValueError("magnitude_range must satisfy lo <= hi < inf")


@dataclass(frozen=True)
class GeneratedSet:
    """A generated set together with the free parameters behind each sample."""

    samples: SampleSet
    config: DatagenConfig
    parallel: tuple[float, ...]
    phase: tuple[float, ...]
    rejection: tuple[float, ...]
    noise: tuple[tuple[float, ...], ...] = field(repr=False, default=())

    def sidecar(self) -> dict:
        cfg = asdict(self.config)
        cfg["magnitude_range"] = list(self.config.magnitude_range)
        return {
            "config": cfg,
            "truth": asdict(self.config.truth),
            "per_sample": [
                {"parallel": a, "phase": phi, "rejection": rho}
                for a, phi, rho in zip(self.parallel, self.phase, self.rejection)
            ],
        }


def rejection_decomposition(g, axis_theta: float) -> tuple[float, float]:
    """``(g . j, |g|^2 - (g . j)^2)`` for the axis ``j(axis_theta)``."""
    g = np.asarray(g, dtype=float)
    parallel = float(g @ axis(axis_theta))
    return parallel, float(g @ g) - parallel * parallel


def _signed(rng: np.random.Generator, lo: float, hi: float, size=None):
    return rng.uniform(lo, hi, size) * rng.choice((-1.0, 1.0), size)


def generate(config: DatagenConfig) -> GeneratedSet:
    """Draw ``config.count`` samples, exact at the truth before noise is added.

    Per sample, in this order: the three ``w1`` components, the parallel part
    ``a`` of ``w2``, the phase ``phi`` uniform on ``[0, 2 pi)``, then six noise
    values.  ``w2`` is assembled as::

        w2 = a j(theta2) + rho (cos phi k(theta2) + sin phi e2)

    with ``k(theta) = (sin theta, 0, -cos theta)``, ``e2 = (0, 1, 0)`` and
    ``rho**2 = p(theta1, w1)``.
    """
    rng = np.random.default_rng(config.seed)
    t1, t2 = config.truth.theta1_true, config.truth.theta2_true
    lo, hi = config.magnitude_range
    j2 = axis(t2)
    k2 = np.array([math.sin(t2), 0.0, -math.cos(t2)])
    e2 = np.array([0.0, 1.0, 0.0])
    samples, pars, phases, rhos, noises = [], [], [], [], []
    for _ in range(config.count):
        w1 = _signed(rng, lo, hi, 3)
        a = float(_signed(rng, lo, hi))
        phi = float(rng.uniform(0.0, 2.0 * math.pi))
        rho = math.sqrt(float(p_of(t1, w1)))
        w2 = a * j2 + rho * (math.cos(phi) * k2 + math.sin(phi) * e2)
        noise = rng.normal(0.0, config.noise_sigma, 6) if config.noise_sigma > 0 else np.zeros(6)
        samples.append(Sample(*(np.concatenate([w1, w2]) + noise)))
        pars.append(a)
        phases.append(phi)
        rhos.append(rho)
        noises.append(tuple(float(n) for n in noise))
    return GeneratedSet(SampleSet(tuple(samples)), config, tuple(pars), tuple(phases), tuple(rhos), tuple(noises))
