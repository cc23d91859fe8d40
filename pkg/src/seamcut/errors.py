"""Exception types shared across the library.

Plain file-system failures keep their builtin types (``FileNotFoundError``,
``OSError``); everything domain-specific derives from :class:`SeamcutError`
so callers can catch a single base. Bad numeric indices raise the builtin
``IndexError``.
"""


class SeamcutError(Exception):
    """Base class for all seamcut-specific errors."""


class UnsupportedFormatError(SeamcutError):
    """File is readable but not one of the supported pixel formats."""


class CorruptDataError(SeamcutError):
    """File claims a supported format but its contents are inconsistent."""


class OutOfBoundsError(SeamcutError):
    """A pixel coordinate lies outside the image."""


class NoInstanceAtPointError(SeamcutError):
    """The selected pixel or id does not name an object instance."""


class EmptyRegionError(SeamcutError):
    """An operation that needs at least one seed pixel received none."""


class DimensionMismatchError(SeamcutError):
    """Images or masks participating in one operation disagree in size."""


class LengthMismatchError(SeamcutError):
    """A labeling's length does not match the model it is applied to."""


class MalformedModelError(SeamcutError):
    """An energy model violates solver preconditions."""


class TooManyAmbiguousError(SeamcutError):
    """Exhaustive enumeration was asked for more pixels than it can afford."""


class InvalidParamsError(SeamcutError):
    """Configuration values outside their documented domain."""


class DegenerateMaskWarning(UserWarning):
    """Band construction saw an all-foreground or all-background mask."""
