"""Exception hierarchy shared across the package."""


class SpellkitError(Exception):
    """Base class for all spellkit errors."""


class ConfigError(SpellkitError):
    """Invalid or inconsistent configuration."""


class LexiconFormatError(SpellkitError):
    """Word-list input could not be decoded or parsed."""

    def __init__(self, message: str, line_number: int | None = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class ContractViolation(SpellkitError):
    """An operation was called outside its stated preconditions."""


class NoCorrectionError(SpellkitError):
    """No candidate replacement exists; surface the token for human review."""


class ScorerError(SpellkitError):
    """Base class for contextual-scorer failures."""


class ScorerTransportError(ScorerError):
    """Remote scorer unreachable, timed out, or returned a non-success status."""


class ScorerProtocolError(ScorerError):
    """Remote scorer response violated the wire contract."""


class EvaluationInputError(SpellkitError):
    """Malformed prediction or gold input (e.g. duplicate sentence ids)."""


class ScorerMissingWordError(ScorerProtocolError):
    """Remote scorer omitted a requested word from its distribution."""
