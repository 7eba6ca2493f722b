"""Exception types raised by ybsolve."""


class YBError(Exception):
    """Base class for all library errors."""


class NonFiniteMatrix(YBError, ValueError):
    pass


class SchurConvergenceError(YBError):
    """The Schur iteration did not converge."""


class OrdSchurSwapError(YBError):
    """An adjacent swap in the Schur reordering lost accuracy."""

    def __init__(self, message, pair):
        super().__init__(message)
        self.pair = pair


class ImaginaryAxisEigenvalue(YBError, ValueError):
    """sign(A) is undefined: an eigenvalue lies on the imaginary axis."""


class NonCommutingInput(YBError, ValueError):
    pass


class NotAnEigenvalue(YBError, ValueError):
    pass


class EmptyGamma(YBError, ValueError):
    pass


class InvalidProjector(YBError, ValueError):
    pass


class InconsistentB(YBError, ValueError):
    pass


class NonsingularInput(YBError, ValueError):
    pass


class SingularS(YBError, ValueError):
    pass


class BlockEquationViolated(YBError, ValueError):
    pass


class SplitMismatch(YBError):
    """The zero/nonzero eigenvalue split of the Schur form is not reliable."""


class NullspaceTooSmall(YBError):
    pass


class UnknownFixture(YBError, KeyError):
    pass


class BadRank(YBError, ValueError):
    pass


class BadStructure(YBError, ValueError):
    pass


class MatrixParseError(YBError, ValueError):
    pass


class NumericalWarning(UserWarning):
    """A computed quantity failed an internal accuracy check."""
