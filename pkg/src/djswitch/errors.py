"""Exception types shared across the package."""


class DJSwitchError(Exception):
    """Base class for every error raised by this package."""


class SizeError(DJSwitchError, ValueError):
    """A register, table or enumeration exceeds its size cap."""


class DimensionMismatchError(DJSwitchError, ValueError):
    """A gate's dimension does not match the qubits it is applied to."""


class DuplicateTargetError(DJSwitchError, ValueError):
    pass


class TargetRangeError(DJSwitchError, IndexError):
    pass


class NotUnitaryError(DJSwitchError, ValueError):
    pass


class PromiseViolation(DJSwitchError, ValueError):
    """The function is neither constant nor balanced."""


class ParseError(DJSwitchError, ValueError):
    """Malformed oracle string or cable-run string."""


class LengthError(ParseError):
    """Oracle string length is not a power of two."""
