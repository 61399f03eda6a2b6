"""Shared exception types."""


class FourgError(Exception):
    """Base class for errors raised by this package."""


class UsageError(FourgError):
    """Bad command-line or API usage."""


class InputFormatError(FourgError):
    """Malformed external input (signature text, group table, permutation file)."""


class GroupConstructionError(FourgError):
    """Parameters do not define a consistent group."""


class InvariantViolation(FourgError):
    """An internal consistency guard failed; results cannot be trusted."""
