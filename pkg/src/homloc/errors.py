"""Exception types shared across the package."""


class HomlocError(Exception):
    pass


class NotACycleError(HomlocError, ValueError):
    """A chain with nonzero boundary was passed where a cycle is required."""


class TrivialClassError(HomlocError, ValueError):
    """The query cycle is null-homologous; localization and size are undefined."""


class NotCarriedError(HomlocError, ValueError):
    """The subcomplex carries no representative of the class."""


class EnumerationCapError(HomlocError):
    """An exhaustive enumeration would exceed the configured cap."""
