"""Exception types shared across the toolkit."""


class OkamotoError(Exception):
    """Base class for all toolkit errors."""


class ParameterError(OkamotoError, ValueError):
    """A parameter lies outside its open domain (a in (1/2,1), b in (0,1), ...)."""


class DepthCapError(OkamotoError, ValueError):
    """An enumeration depth exceeds the configured cap."""


class BudgetError(OkamotoError, ValueError):
    """An enumeration or sampling budget would be exceeded."""
