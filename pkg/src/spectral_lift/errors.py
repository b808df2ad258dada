"""Exception hierarchy shared by every module of the package."""


class SpectralLiftError(Exception):
    """Base class for all errors raised by :mod:`spectral_lift`."""


class TrackMismatch(SpectralLiftError, TypeError):
    """An exact value was combined with a floating value."""


class PoleError(SpectralLiftError, ArithmeticError):
    """A quotient of series has a non-removable singularity at the center."""


class TruncationTooSmall(SpectralLiftError):
    """The known coefficients of a series cannot certify the requested fact."""


class DuplicateNode(SpectralLiftError, ValueError):
    pass


class NonContiguousJet(SpectralLiftError, ValueError):
    pass


class SingularMatrix(SpectralLiftError, ArithmeticError):
    pass


class MalformedShape(SpectralLiftError, ValueError):
    pass


class ConditionsFail(SpectralLiftError):
    """The vanishing-order conditions at some node are not met.

    ``report`` carries the offending :class:`~spectral_lift.conditions.ConditionReport`
    when one is available.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class PreconditionViolated(SpectralLiftError, ValueError):
    pass


class UnsupportedDimension(SpectralLiftError):
    pass


class JetEquationError(SpectralLiftError):
    """The jet equations for a diagonal entry have no admissible solution."""


class FrameZeroViolation(SpectralLiftError):
    """A superdiagonal function keeps an extraneous zero in the closed disk."""


class BadParameters(SpectralLiftError, ValueError):
    pass


class InternalInvariantError(SpectralLiftError, AssertionError):
    """A property guaranteed by construction failed; this is a bug."""
