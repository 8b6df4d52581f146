"""Exception hierarchy for hspec."""


class HspecError(Exception):
    """Base class for all errors raised by hspec."""


class DomainError(HspecError, ValueError):
    """A point lies outside the closed unit disk (or the open disk, where required)."""


class BranchError(HspecError):
    """The square root of the derivative cannot be continued (derivative vanishes)."""


class ConfigurationError(HspecError, ValueError):
    """Truncation or quadrature orders are inconsistent."""


class PreconditionError(HspecError, ValueError):
    """Inputs are valid individually but violate an operation's precondition."""


class QuadratureError(HspecError):
    """A discretized integral violates a structural property it must have."""


class NearSingularError(QuadratureError):
    """Evaluation point too close to the quadrature contour."""


class ZeroCountError(HspecError):
    """The argument principle could not produce a reliable integer count."""


class SizeError(HspecError, ValueError):
    """Requested exterior power is too large to form explicitly."""


class SpectrumError(HspecError):
    """A dense SVD or eigendecomposition failed."""
