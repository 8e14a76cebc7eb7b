class RACGError(Exception):
    """Base class for all errors raised by this package."""


class GroupDefinitionError(RACGError, ValueError):
    pass


class UnknownGeneratorError(RACGError, KeyError):
    def __str__(self):
        return f"unknown generator {self.args[0]!r}"


class MixedGroupsError(RACGError, ValueError):
    pass


class CapExceededError(RACGError):
    """An enumeration would exceed its configured size cap."""


class ColoringError(RACGError, ValueError):
    pass


class NotAReflectionError(RACGError, ValueError):
    pass


class ColourMismatchError(RACGError, ValueError):
    pass


class LevelMismatchError(RACGError, ValueError):
    pass
