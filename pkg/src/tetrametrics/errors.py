"""Shared exception taxonomy.

The CLI maps these onto exit codes (argument 2, resolution 3,
bracket/oracle 4, I/O 5) and the HTTP service onto status codes, so every
module raises from this family rather than bare ValueError.
"""


class TetrametricsError(Exception):
    """Base class for all library errors."""


class UnknownMeasureError(TetrametricsError, KeyError):
    """Measure id not present in the registry."""

    def __init__(self, measure_id: str):
        super().__init__(measure_id)
        self.measure_id = measure_id

    def __str__(self) -> str:
        return f"unknown measure {self.measure_id!r}; see list_measures()"


class ParameterError(TetrametricsError, ValueError):
    """Parameter name unknown or value outside its declared interval."""


class ResolutionError(TetrametricsError, ValueError):
    """Requested fraction/rates not realizable on the integer grid.

    Carries nearest realizable suggestions when they exist.
    """

    def __init__(self, message: str, suggestions: tuple = ()):
        super().__init__(message)
        self.suggestions = suggestions


class EmptyGamutError(TetrametricsError, ValueError):
    """Every grid point evaluated to Undefined; no gamut exists."""


class ColormapError(TetrametricsError, ValueError):
    """Malformed colormap specification."""


class BracketError(TetrametricsError, ValueError):
    """Bracket endpoints do not straddle a verdict/sign change."""


class OracleShapeError(TetrametricsError, ValueError):
    """Property-vs-parameter shape unsuitable for boolean bisection."""


class UndefinedValueError(TetrametricsError, ValueError):
    """An Undefined measure value appeared where a Defined one is required."""
