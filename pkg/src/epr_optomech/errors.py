"""Exception hierarchy shared by all modules."""


class EprOptomechError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(EprOptomechError):
    """Configuration document could not be turned into a valid setup."""


class ConfigParseError(ConfigError):
    """Document violates the JSON schema (bad type, unknown key, not an object)."""


class ConfigValidationError(ConfigError):
    """Well-formed document violates a physical invariant (e.g. Q <= 1)."""


class DomainError(EprOptomechError):
    """Inputs outside the physical domain of a formula (e.g. f <= 0 where the SQL diverges)."""


class NoCrossingError(EprOptomechError):
    """Two spectral curves do not intersect inside the requested bracket."""


class AmbiguousBracketError(EprOptomechError):
    """Bracket contains several (or degenerate) intersections; refine the bracket."""


class SolverError(EprOptomechError):
    """Iterative or algebraic solver failed to converge.

    Carries the residual achieved so failures are diagnosable.
    """

    def __init__(self, message: str, residual: float | None = None):
        if residual is not None:
            message = f"{message} (residual {residual:.3e})"
        super().__init__(message)
        self.residual = residual
