"""Exception hierarchy. The CLI maps each family to an exit code."""


class WorstloadError(Exception):
    """Base class for all package errors."""


class ConfigError(WorstloadError):
    pass


class MeshError(WorstloadError):
    """Anything wrong with mesh input, generation or topology."""


class ParameterError(MeshError):
    pass


class GeometryError(MeshError):
    pass


class ResolutionError(MeshError):
    pass


class TopologyError(MeshError):
    pass


class MeshParseError(MeshError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MeshValidationError(MeshError):
    pass


class SolverError(WorstloadError):
    pass


class IndefiniteError(SolverError):
    def __init__(self, pivot):
        self.pivot = pivot
        super().__init__(f"matrix is not positive definite (Cholesky failed at pivot {pivot})")


class EmptyRegionError(SolverError):
    pass


class UndefinedRatioError(SolverError):
    """Energy ratio requested for a load that stores no energy."""
