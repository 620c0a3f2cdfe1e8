"""Exception types raised by repeatdeg."""


class RepeatDegreeError(ValueError):
    """Base class for all library errors."""


class EmptyBlock(RepeatDegreeError):
    pass


class EmptyFamily(RepeatDegreeError):
    pass


class NotACovering(RepeatDegreeError):
    """The union of the blocks misses part of the universe.

    ``family`` carries the offending set family when one was built.
    """

    def __init__(self, message, family=None):
        super().__init__(message)
        self.family = family


class UnknownElement(RepeatDegreeError):
    pass


class UniverseMismatch(RepeatDegreeError):
    pass


class UniverseTooLarge(RepeatDegreeError):
    pass


class IncompleteTable(RepeatDegreeError):
    pass


class InconsistentTable(RepeatDegreeError):
    """A degree table that no set family can produce.

    ``subset`` names the first offending subset (canonical order) and
    ``value`` the recovered indicator there, when known.
    """

    def __init__(self, message, subset=None, value=None):
        super().__init__(message)
        self.subset = subset
        self.value = value


class WindowMismatch(RepeatDegreeError):
    pass


class InvalidSize(RepeatDegreeError):
    pass


class FormatError(RepeatDegreeError):
    """Malformed covering or degree-table input."""
