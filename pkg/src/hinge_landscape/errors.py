"""Exception hierarchy.

Everything raised for bad input derives from :class:`HingeError`, which is
itself a ``ValueError`` so callers that only care about "invalid input" can
catch the builtin.
"""


class HingeError(ValueError):
    """Base class for input and construction errors."""


class DegenerateSampleError(HingeError):
    """A half-sample has w_i1 = w_i3 = 0 (s_i = 0) or non-finite components."""


class EmptyCurveError(HingeError):
    """The curve argument never enters [-1, 1]; the sample has no zero set."""


class NotOnCurveError(HingeError):
    """A point was claimed to lie on the zero curve but its residual is too large."""


class InvalidSamplesError(HingeError):
    """A constructed sample fails the validity condition."""


class NoIntersectionError(HingeError):
    """Two zero curves do not meet inside the patch."""


class DegenerateCurvesError(HingeError):
    """Two canonical curves share the same slope coefficient u."""


class SampleFormatError(HingeError):
    """A serialized sample is malformed."""
