"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`ArmaError`.
The CLI maps the two branches below onto exit codes: ``ModelValidationError``
exits with 2, everything under ``NumericError`` exits with 3.
"""

from __future__ import annotations


class ArmaError(Exception):
    """Base class for all package errors."""


class ModelValidationError(ArmaError, ValueError):
    """A model description violates the structural contract."""

    def __init__(self, violations):
        self.violations = list(violations)
        text = "; ".join(f"{v.path}: {v.message}" for v in self.violations)
        super().__init__(text or "invalid model")


class NumericError(ArmaError, ArithmeticError):
    """A numerical or mathematical-domain failure."""


class DomainError(NumericError, ValueError):
    """An argument lies outside the domain where a formula is defined."""


class NotPositiveDefiniteError(DomainError):
    """Cholesky factorization failed at ``pivot`` (zero based)."""

    def __init__(self, message: str, pivot: int | None = None):
        super().__init__(message)
        self.pivot = pivot


class SingularMatrixError(NumericError):
    """Linear system is singular or too ill-conditioned to trust."""


class StabilityError(NumericError):
    """Model is not stable, so stationary quantities do not exist."""

    def __init__(self, spectral_radius: float):
        super().__init__(f"unstable: spectral radius {spectral_radius:.6g}")
        self.spectral_radius = spectral_radius


class NoFiniteCovarianceError(NumericError):
    """The residual family has no second moments (Cauchy)."""


class NotProportionalError(NumericError):
    """Cauchy output terms do not share a common scale shape."""


class SizeError(NumericError):
    """Problem dimension exceeds a configured cap."""


class ArityError(NumericError, ValueError):
    """Not enough history supplied to a recursion."""


class DegenerateModelError(ArmaError, ValueError):
    """Operation needs at least one lag (p + r + q >= 1)."""
