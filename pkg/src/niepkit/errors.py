"""Exception types shared across the package."""


class NiepError(Exception):
    """Base class for all package-specific errors."""


class RealityViolation(NiepError):
    """A spectrum is not closed under complex conjugation."""


class DimensionTooLarge(NiepError):
    """Requested size exceeds a combinatorial or symbolic guard."""


class DimensionMismatch(NiepError):
    """Operands have incompatible dimensions."""


class ConvergenceFailure(NiepError):
    """A numerical routine failed to converge."""


class NotRealizable(NiepError):
    """No nonnegative matrix realizes the given spectrum."""


class ConfigError(NiepError):
    """Invalid search or sampling configuration."""


class ParseError(NiepError):
    """Malformed textual input.

    Carries 1-based ``line`` and ``column`` of the offending token.
    """

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
