"""Landscape analysis of the two-angle hinge axis objective.

The objective ``O(theta1, theta2) = sum(d_s**2)`` measures how well a pair of
candidate hinge axes explains paired angular-velocity samples.  The package
provides its closed-form derivatives, the lattice of saddles and maxima, the
curve of global minima, the boundary-pattern census of that curve, pairs of
samples whose curves cross and create false minima, a multi-start solver and
a synthetic data generator.
"""

__version__ = "0.1.0"

from .ambiguity import (
    PAPER_RECIPE,
    FalseMinimaReport,
    PairRecipe,
    SamplePair,
    construct_pair,
    false_minima_report,
    grids_equal,
    paper_example,
)
from .calculus import (
    Gradient,
    Hessian,
    fd_gradient,
    fd_hessian,
    gradient,
    gradient_multi,
    hessian,
    hessian_det,
    hessian_multi,
)
from .curves import BoundaryPattern, PatternCensus, boundary_pattern, enumerate_patterns, intersect
from .datagen import DatagenConfig, HingeTruth, generate, rejection_decomposition
from .errors import (
    DegenerateCurvesError,
    DegenerateSampleError,
    EmptyCurveError,
    HingeError,
    InvalidSamplesError,
    NoIntersectionError,
    NotOnCurveError,
    SampleFormatError,
)
from .model import Angles, Sample, SampleSet, d_of, is_valid, objective, p_of
from .solver import Minimum, SolveOptions, SolveResult, Termination, multistart, solve
from .stationary import (
    CanonicalCurve,
    Classification,
    Parity,
    canonical,
    curve_exists,
    grid_points,
    on_curve_residual,
    trace_curve,
    verify_curve_minimality,
)

__all__ = [
    "Angles",
    "boundary_pattern",
    "BoundaryPattern",
    "canonical",
    "CanonicalCurve",
    "Classification",
    "construct_pair",
    "curve_exists",
    "d_of",
    "DatagenConfig",
    "DegenerateCurvesError",
    "DegenerateSampleError",
    "EmptyCurveError",
    "enumerate_patterns",
    "false_minima_report",
    "FalseMinimaReport",
    "fd_gradient",
    "fd_hessian",
    "generate",
    "gradient",
    "Gradient",
    "gradient_multi",
    "grid_points",
    "grids_equal",
    "hessian",
    "Hessian",
    "hessian_det",
    "hessian_multi",
    "HingeError",
    "HingeTruth",
    "intersect",
    "InvalidSamplesError",
    "is_valid",
    "Minimum",
    "multistart",
    "NoIntersectionError",
    "NotOnCurveError",
    "objective",
    "on_curve_residual",
    "p_of",
    "PairRecipe",
    "paper_example",
    "PAPER_RECIPE",
    "Parity",
    "PatternCensus",
    "rejection_decomposition",
    "Sample",
    "SampleFormatError",
    "SamplePair",
    "SampleSet",
    "solve",
    "SolveOptions",
    "SolveResult",
    "Termination",
    "trace_curve",
    "verify_curve_minimality",
]
