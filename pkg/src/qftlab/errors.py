"""Exception types raised by qftlab.

Every error is a ``ValueError`` subclass: they all signal bad input
(wrong sizes, out-of-range indices, malformed configs) rather than an
internal failure. The CLI maps them to exit code 2.
"""


class QFTLabError(ValueError):
    """Base class for all library errors."""


class DimensionMismatch(QFTLabError):
    pass


class DuplicateTarget(QFTLabError):
    pass


class IndexOutOfRange(QFTLabError):
    pass


class EqualIndices(QFTLabError):
    pass


class BadArity(QFTLabError):
    pass


class SizeOutOfRange(QFTLabError):
    pass


class NotUnitary(QFTLabError):
    pass


class NotNormalized(QFTLabError):
    pass


class ZeroVector(QFTLabError):
    """Raised when a superposition of signal components cancels to zero."""


class NonpositiveDuration(QFTLabError):
    pass


class UnsupportedFormat(QFTLabError):
    pass


class UnknownPreset(QFTLabError):
    pass


class ConfigInvalid(QFTLabError):
    """Bad experiment configuration; ``field`` names the offending key."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")
