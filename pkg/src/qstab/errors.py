"""Exception types shared across the package."""


class QstabError(Exception):
    """Base class for all package errors."""


class GraphError(QstabError, ValueError):
    """Invalid graph construction or unknown vertex."""


class GraphFormatError(QstabError, ValueError):
    """Malformed graph6 or edge-list text."""


class CapExceeded(QstabError):
    """A desk-scale search was asked to run beyond its size cap."""


class NotStableError(QstabError, ValueError):
    """A vertex set that must be stable contains an edge."""


class NotRegularError(QstabError, ValueError):
    """An operation restricted to regular graphs received a non-regular one."""


class NotAnEigenvalueError(QstabError, ValueError):
    pass


class ConvergenceError(QstabError, RuntimeError):
    pass


class VerificationError(QstabError, RuntimeError):
    """An emitted certificate failed its independent re-check."""
