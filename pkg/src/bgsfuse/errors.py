"""Exception types and process exit codes shared across the toolkit."""

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_INTERNAL = 4


class BgsfuseError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(BgsfuseError):
    """Invalid configuration, command-line usage, or run setup."""


class DataError(BgsfuseError):
    """Corpus layout, file format, or shape problem in input data."""


class DecodeError(DataError):
    """Malformed or truncated image payload."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class LearningError(DataError):
    """Learning-set statistics are insufficient to fit a combiner."""


class InternalError(BgsfuseError):
    """An internal invariant was violated; indicates a bug."""
