"""Exception types shared across the package.

Argument and file-format problems raise plain ``ValueError``; the classes
here mark conditions that are numerical rather than caller mistakes.
"""


class ConeRelaxError(Exception):
    """Base class for numerical errors raised by this package."""


class NumericalFailureError(ConeRelaxError):
    """An iterative numerical procedure diverged or lost internal consistency."""


class NotPositiveDefiniteError(ConeRelaxError):
    """A matrix that must be positive definite is not.

    The offending smallest eigenvalue is available as ``min_eigenvalue``.
    """

    def __init__(self, message: str, min_eigenvalue: float):
        super().__init__(message)
        self.min_eigenvalue = float(min_eigenvalue)


class DegenerateBasisError(ConeRelaxError):
    """A matrix family meant to be a basis is numerically rank deficient."""


class DegenerateSamplingError(ConeRelaxError):
    """Random sampling kept landing on a measure-zero degenerate set."""
