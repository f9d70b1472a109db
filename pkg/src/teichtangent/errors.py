"""Exception hierarchy shared by all modules."""


class TeichError(ValueError):
    """Base class for every error raised by this package."""


class TruncationError(TeichError):
    """Requested truncation order is incompatible with the available data."""


class InconsistentFieldError(TeichError):
    """A Fourier field violates the reality constraint a_{-k} = conj(a_k)."""


class DegenerateNormalizationError(TeichError):
    """Leading schlicht coefficient vanishes, so no Mobius normalization exists."""


class IntegrationDomainError(TeichError):
    """Integrand is not finite at some quadrature node."""


class OutsideDomainError(TeichError):
    """Point lies outside the domain on which the object is defined."""


class NoInterpolationError(TeichError):
    """Sampled data was queried away from its grid nodes."""


class SingularNodeError(TeichError):
    """A quadrature node coincides with a pole of the integrand."""


class BoundaryProximityError(TeichError):
    """Evaluation point is too close to the unit circle."""


class OutOfRangeError(TeichError):
    """Parameter outside the range for which a closed form is valid."""


class StepTooLargeError(TeichError):
    """Finite-difference stencil leaves the disc."""


class GridShapeError(TeichError):
    """Line grid is not closed under the requested shifts."""


class NormalizationDefectError(TeichError):
    """Series expansion does not have the normalized form zeta + c_2/zeta + ..."""


class AppendixInconsistencyError(TeichError):
    """Two exact routes to the harmonic coefficients disagree."""


class ConfigError(TeichError):
    """Invalid scenario configuration."""
