"""Exception types shared across the package."""


class LogosymError(Exception):
    """Base class for all package-specific errors."""


class InvalidImageError(LogosymError):
    """Raised for malformed image buffers (zero dimensions, bad channel count)."""


class DataError(LogosymError):
    """Raised for unusable external data: corpora, feature files, model files."""


class InfeasibleError(LogosymError):
    """Raised when a requested configuration cannot be satisfied by the data,
    e.g. asking for more clusters than a class has training samples."""
