"""Exception hierarchy shared by all modules."""


class ToricError(Exception):
    """Base class for every error raised by this package."""


class InputError(ToricError, ValueError):
    """Malformed or degenerate input data."""


class ZeroVector(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class ParameterMismatch(InputError):
    pass


class ZeroCharacter(InputError):
    pass


class NotSplitSummand(ToricError):
    pass


class NotATwoFace(ToricError):
    pass


class ConeNotInFan(ToricError):
    pass


class MixedDimension(ToricError):
    pass


class NotBadCone(ToricError):
    pass


class NotComplete(ToricError):
    pass


class CapExceeded(ToricError):
    pass


class NotBuilding(ToricError):
    pass


class PropertyEViolated(ToricError):
    """A layer fails property (E) on some cone; ``witness`` holds its rays."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
