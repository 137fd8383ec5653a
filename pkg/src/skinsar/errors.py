"""Exception types raised by skinsar."""


class DosimetryError(Exception):
    """Base class for all skinsar errors."""


class InvalidParameter(DosimetryError, ValueError):
    pass


class FrequencyOutOfRange(DosimetryError, ValueError):
    pass


class LosslessMedium(DosimetryError, ValueError):
    """Penetration depth is unbounded for a medium with zero conductivity."""


class ZeroDistance(DosimetryError, ValueError):
    """The far-field link budget is singular at d <= 0."""


class NoRuleForFrequency(DosimetryError, LookupError):
    pass


class SourceCollocation(DosimetryError, ValueError):
    pass


class EmptyGrid(DosimetryError, ValueError):
    pass


class NotSteerable(DosimetryError, TypeError):
    pass


class FixtureError(DosimetryError, ValueError):
    """A TOML fixture failed to parse or validate."""
