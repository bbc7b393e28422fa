"""Exception types shared across the package."""


class OrbcharError(Exception):
    """Base class for all package-specific errors."""


class WindowError(OrbcharError):
    """A series operation needed an exponent outside the declared window."""


class ExpansionError(OrbcharError):
    """An expansion request was ill-posed (e.g. no direction for an infinite series)."""


class BudgetExceededError(OrbcharError):
    """A computation exceeded its configured term or time budget."""
