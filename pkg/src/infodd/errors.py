"""Exception hierarchy shared across the package."""


class InfoddError(Exception):
    """Base class for all package-specific errors."""


class DataError(InfoddError):
    """Malformed or domain-violating input (catalog, CSV, diagram file)."""


class InconsistentTableError(DataError):
    """Two rows with identical variable values disagree on the output."""


class DiagramError(InfoddError):
    """Structural violation while building or loading a diagram."""


class SessionError(InfoddError):
    """Base for navigator session misuse."""


class UnknownSessionError(SessionError):
    """Session id does not exist (never created, or expired)."""


class InvalidAnswerError(SessionError):
    """Answer value outside the current question's option range."""


class SessionConflictError(SessionError):
    """Operation not allowed in the session's current phase."""
