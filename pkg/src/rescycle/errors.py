"""Exception hierarchy.

Data problems (bad input files, unusable series, degenerate cycles) derive
from :class:`DataError`; the CLI maps those to exit status 2.
"""


class RescycleError(Exception):
    """Base class for all package errors."""


class ConfigError(RescycleError, ValueError):
    """Invalid parameter or configuration value."""


class DataError(RescycleError):
    """Input data cannot be processed."""


class FormatError(DataError):
    """CSV header is missing required columns."""


class RowError(DataError):
    """A CSV row holds an unparseable date or an invalid close."""

    def __init__(self, row, message):
        super().__init__(f"row {row}: {message}")
        self.row = row


class InsufficientDataError(DataError):
    """Too few valid observations."""


class FetchError(DataError):
    """The quote endpoint answered with a non-success status."""

    def __init__(self, status, url=""):
        super().__init__(f"HTTP {status} for {url}" if url else f"HTTP {status}")
        self.status = status
        self.url = url


class DegenerateCycleError(DataError):
    """Cycle has no downturn (p_pre == p_event)."""


class ZeroFailureSlopeError(DegenerateCycleError):
    """Failure slope is zero or undefined."""


class InsufficientTailError(DataError):
    """No x_min candidate leaves a usable power-law tail."""
