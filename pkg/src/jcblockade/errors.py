"""Exception types raised by the simulation library."""


class BlockadeError(Exception):
    """Base class for all library-specific errors."""


class InvalidTruncationError(BlockadeError, ValueError):
    """Fock-space truncation too small for the requested construction."""


class AmbiguousSteadyStateError(BlockadeError):
    """The Liouvillian kernel is (numerically) degenerate."""


class SteadyStateSolverError(BlockadeError):
    """The steady-state linear solve did not meet its residual target."""


class StiffnessError(BlockadeError):
    """Time propagation produced non-finite values."""


class UndefinedCorrelationError(BlockadeError):
    """Normalization of a correlation function vanishes."""


class WindowTooShortError(BlockadeError):
    """Correlation has not decayed enough for a one-sided transform."""


class DegenerateParametersError(BlockadeError):
    """Parameter combination makes the requested closed form singular."""


class RegimeWarning(UserWarning):
    """Parameters outside the strong-coupling / weak-drive regime."""


class TruncationWarning(UserWarning):
    """Result shows signs of Fock-space truncation error."""
