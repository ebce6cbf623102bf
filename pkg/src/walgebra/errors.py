"""Exception types shared across the package."""


class WAlgebraError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidSymbol(WAlgebraError):
    """A basis symbol is malformed or not allowed under the chosen algebra."""


class UnsupportedAlgebra(WAlgebraError):
    """The operation is only defined for a different algebra variant."""


class OutOfWindow(WAlgebraError):
    """A map was applied to a symbol outside its window of definition."""


class WindowTooSmall(WAlgebraError):
    """The requested window admits no constraint rows (or violates a size precondition)."""


class InvalidCore(WAlgebraError):
    """The core radius is incompatible with the window it is cut from."""


class MapFormatError(WAlgebraError):
    """A map file or element literal does not match the documented JSON format."""


class NotInClassifiedFamily(WAlgebraError):
    """A solved map does not match the closed-form family it was tested against.

    Carries the first failing argument pair and the residual element; this
    signals either a solver bug or a window that is too small to stabilize.
    """

    def __init__(self, message, pair=None, residual=None):
        super().__init__(message)
        self.pair = pair
        self.residual = residual
