"""Error types raised across the package."""


class AnbeamError(Exception):
    """Base class for package-specific failures."""


class NumericalFailure(AnbeamError):
    """An iterative numerical routine failed to converge or broke down."""


class DimensionalInfeasibility(AnbeamError):
    """The array does not have enough antennas for the requested design."""


class DegenerateGeometry(AnbeamError):
    """User channels are (numerically) linearly dependent."""


class AssemblyError(AnbeamError):
    """Inconsistent dimensions while assembling an optimization program."""


class RankViolation(AnbeamError):
    """A beamforming matrix is not numerically rank one.

    Carries the eigenvalue spectrum so callers can inspect how badly the
    rank-one property failed.
    """

    def __init__(self, message, spectrum):
        super().__init__(message)
        self.spectrum = spectrum


class IllConditionedError(AnbeamError):
    """A matrix inverse was requested from a numerically singular matrix."""


class InfeasibleScenario(AnbeamError):
    """The robust design problem has no solution for the given scenario."""


class ScenarioParseError(AnbeamError):
    """A scenario file or field failed validation."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
