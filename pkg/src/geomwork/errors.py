"""Exception types shared across the package."""


class GeomworkError(Exception):
    """Base class for all package-specific failures."""


class InvalidParametersError(GeomworkError, ValueError):
    """Model or closed-form parameters outside their admissible domain."""


class SteadyStateError(GeomworkError):
    """Base class for steady-state solver failures."""


class DegenerateSteadyStateError(SteadyStateError):
    """The Liouvillian null space is (numerically) more than one-dimensional."""


class NoSteadyStateError(SteadyStateError):
    """The Liouvillian has no numerical null vector."""


class StepTooLargeError(GeomworkError):
    """Time integration produced unacceptable trace drift."""


class IntegrationFailureError(GeomworkError):
    """Time evolution left the physical state space."""


class ConfigError(GeomworkError, ValueError):
    """Invalid experiment configuration."""
