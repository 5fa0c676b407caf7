"""Exception types shared across the package."""


class CapacityError(Exception):
    """An input exceeds a configured size or enumeration limit."""


class ScopeError(ValueError):
    """A requested minimum-degree interval is empty or out of range."""


class EmptyArchiveError(Exception):
    """A solver run finished without archiving any verified graph."""


class ConsistencyError(Exception):
    """Two routes that must agree produced contradictory results."""


class GraphParseError(ValueError):
    """Malformed graph input; carries a best-effort position."""

    def __init__(self, message, position=None):
        super().__init__(message if position is None
                         else f"{message} (at {position})")
        self.position = position
