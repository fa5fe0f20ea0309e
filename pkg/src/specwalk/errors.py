"""Exception hierarchy shared by every module."""


class SpecwalkError(Exception):
    """Base class for domain errors (CLI exit status 1)."""


class GraphError(SpecwalkError, ValueError):
    """Invalid graph construction or generator parameters."""


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DisconnectedGraphError(GraphError):
    """Raised by operations that need a connected graph."""


class ConvergenceError(SpecwalkError, RuntimeError):
    pass


class OracleError(SpecwalkError, RuntimeError):
    pass


class EmbeddingError(SpecwalkError, ValueError):
    """No nonzero eigenvalue lies below the requested threshold, or
    Ball selection ran out of candidate centers."""
