"""Exception types shared across the package."""


class FloodmixError(Exception):
    """Base class for all package-specific errors."""


class ParameterError(FloodmixError, ValueError):
    """A distribution parameter vector violates its family constraints."""


class ParseError(FloodmixError, ValueError):
    """A data file could not be parsed (malformed header, empty file, ...)."""


class ConfigError(FloodmixError, ValueError):
    """A configuration value is invalid (negative cv, even node count, ...)."""


class DataError(FloodmixError, ValueError):
    """A dataset violates its invariants."""


class FitError(FloodmixError, RuntimeError):
    """Maximum likelihood estimation failed (e.g. every seed infeasible)."""


class NumericError(FloodmixError, RuntimeError):
    """A numeric routine failed (bracket failure, no convergence, ...)."""


class RoutingError(FloodmixError, RuntimeError):
    """Reservoir routing left the domain covered by the rating curves."""


class OvertoppingSearchError(FloodmixError, RuntimeError):
    """The dam could not be overtopped within the search range."""
