"""Exception hierarchy for the utfm package."""


class UtfmError(Exception):
    """Base class for all errors raised by this package."""


class SchemaError(UtfmError):
    """Structural mismatch: unknown CSV column, wrong observation dimension."""


class InputError(UtfmError):
    """A value is outside its legal domain (non-finite observation, bad coordinate)."""


class RecordError(UtfmError):
    """Row-level validation failure. Carries the offending row/field when known."""

    def __init__(self, message: str, *, row: int | None = None, field: str | None = None):
        super().__init__(message)
        self.row = row
        self.field = field


class ConfigError(UtfmError):
    """Invalid configuration (empty vocabulary, fewer sequences than folds, ...)."""


class StateError(UtfmError):
    """Operation attempted in the wrong state (e.g. applying an unfitted standardizer)."""


class DegenerateDataError(UtfmError):
    """Training data cannot identify the requested parameters."""


class ModelFileError(UtfmError):
    """A persisted model or report file is unreadable, truncated, or corrupt."""


class VersionError(ModelFileError):
    """A persisted file carries an unsupported format version."""
