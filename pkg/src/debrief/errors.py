"""Exception types shared across the package."""

from __future__ import annotations


class DefinitionError(ValueError):
    """A game-definition document is syntactically or semantically invalid.

    ``field`` names the offending field (dotted path) for semantic errors;
    it is None for document-level syntax errors.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class LogParseError(ValueError):
    """Strict-mode event-log parsing aborted; carries all diagnostics collected."""

    def __init__(self, diagnostics):
        lines = "; ".join(d.message for d in diagnostics if d.severity == "error")
        super().__init__(f"event log rejected: {lines}")
        self.diagnostics = list(diagnostics)


class UnknownPlayerError(ValueError):
    """A query referenced a player_id absent from the session set."""

    def __init__(self, player_id):
        super().__init__(f"unknown player {player_id}")
        self.player_id = player_id
