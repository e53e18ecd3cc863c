"""Exception hierarchy shared across the package."""


class RoughRankError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(RoughRankError):
    """Bad option value, unknown name, or out-of-range parameter."""


class DataError(RoughRankError):
    """Malformed or inconsistent input data."""


class DomainError(RoughRankError):
    """Mathematically invalid argument, e.g. an empty target set."""


class InternalError(RoughRankError):
    """Broken internal invariant; indicates a bug, not bad input."""
