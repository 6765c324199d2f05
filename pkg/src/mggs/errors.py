"""Exception hierarchy shared by all modules."""


class MggsError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(MggsError, ValueError):
    pass


class RankError(MggsError, ValueError):
    pass


class DepthError(MggsError, ValueError):
    pass


class DomainError(MggsError, ValueError):
    pass


class PreconditionError(MggsError, ValueError):
    pass


class UnsupportedGroupError(MggsError):
    """Raised for the constant GGS-group wherever it is excluded."""


class ResourceError(MggsError, RuntimeError):
    """A hard computation budget was exceeded."""
