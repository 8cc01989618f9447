"""Exception types shared across the package."""


class NewmanLabError(Exception):
    """Base class for errors raised by newman_lab."""


class DomainError(NewmanLabError, ValueError):
    """Arguments fall outside the domain an operation is defined on."""


class ResourceLimitError(NewmanLabError, RuntimeError):
    """A brute-force computation was refused because it would be too large."""


class PropertyViolation(NewmanLabError, AssertionError):
    """A checked identity or inequality failed."""
