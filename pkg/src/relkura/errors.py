"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "RelkuraError",
    "DomainError",
    "ConvergenceError",
    "UnsupportedModelError",
    "DegenerateFitError",
    "ConfigError",
]


class RelkuraError(Exception):
    """Base class for every error raised by this package."""


class DomainError(RelkuraError):
    """An input lies outside the admissible domain of an operation.

    Typical causes: a velocity at or beyond the model's velocity bound,
    a non-finite drive value, or a precondition violation such as a
    coupling strength too small for the requested phase-lock angle.
    """


class ConvergenceError(RelkuraError):
    """An iterative solve exhausted its budget without meeting tolerance."""


class UnsupportedModelError(RelkuraError):
    """The requested quantity is not defined for this model kind."""


class DegenerateFitError(RelkuraError):
    """Regression input carries no usable signal (e.g. all abscissae equal)."""


class ConfigError(RelkuraError):
    """A run configuration failed validation.

    The offending field name is kept on ``field`` so command-line errors
    can point at exactly what to fix.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
