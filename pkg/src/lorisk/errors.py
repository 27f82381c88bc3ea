"""Exception types shared across the package."""


class LoriskError(Exception):
    """Base class for all package-specific errors."""


class ShapeError(LoriskError):
    """Operands have inconsistent or invalid shapes/values."""


class InvalidRank(LoriskError):
    """Requested rank is outside the valid range for the operand."""


class NumericalFailure(LoriskError):
    """A dense factorization failed to converge.

    LAPACK does not expose its internal iteration count, so ``detail``
    carries the backend diagnostic instead.
    """

    def __init__(self, message: str, detail: str | None = None):
        super().__init__(message)
        self.detail = detail


class NotPSD(LoriskError):
    """Matrix expected to be positive semidefinite has a significantly
    negative eigenvalue."""


class RegimeError(LoriskError):
    """Sample size / dimension combination violates the precondition of a
    closed form or bound (e.g. asking for the overdetermined formula with
    n <= dx + 1)."""


class ThresholdError(LoriskError):
    """Evaluation requested exactly at the interpolation threshold n = dx,
    where the asymptotic expressions diverge."""


class SingularCovariance(LoriskError):
    """A sampled empirical covariance was numerically singular where an
    inverse was required, repeatedly."""


class StepTooLarge(LoriskError):
    """Gradient-descent step size violates 0 < step < 2 / lambda_max."""


class UnknownCheck(LoriskError):
    """Verification check name is not registered."""


class ConfigError(LoriskError):
    """Invalid sweep configuration; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
