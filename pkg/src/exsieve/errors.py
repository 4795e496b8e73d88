"""Exception hierarchy shared by all modules."""


class ExsieveError(Exception):
    """Base class for all library errors."""


class NotNormalized(ExsieveError):
    """Weights do not sum to exactly 1."""


class NegativeWeight(ExsieveError):
    """A probability weight is negative."""


class ZeroMass(ExsieveError):
    """Conditioning event has probability zero."""


class BadK(ExsieveError):
    """Order parameter k outside the valid range for the operation."""


class EventCapExceeded(ExsieveError):
    """Family is larger than the configured full-sieve event cap."""


class InsufficientPrefix(ExsieveError):
    """Moment sequence does not store enough entries for the request."""


class NoCertificate(ExsieveError):
    """Operation requires a tail certificate that is absent or too weak."""


class WidthNotAchievable(ExsieveError):
    """Certificate cannot shrink the bracket to the target width within the term cap."""


class DivergentSeries(ExsieveError):
    """A moment series is certified infinite at some index."""

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"series for S_{index} diverges")


class SchemaError(ExsieveError):
    """Input document does not match the expected JSON schema."""
