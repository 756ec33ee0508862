"""Exception hierarchy for numrad."""


class NumradError(Exception):
    """Base class for all errors raised by numrad."""


class DimensionMismatch(NumradError, ValueError):
    """Operand shapes do not conform."""


class NotHermitian(NumradError, ValueError):
    pass


class NotPSD(NumradError, ValueError):
    pass


class NotUnitary(NumradError, ValueError):
    pass


class NotNonnegative(NumradError, ValueError):
    pass


class NotUpperTriangular(NumradError, ValueError):
    pass


class NegativeEigenvalue(NumradError, ValueError):
    """An eigenvalue fell below the PSD clipping floor."""


class PhiDomainError(NumradError, ValueError):
    """A scalar function returned NaN/inf (or raised) on the spectrum."""


class FgPairError(NumradError, ValueError):
    """An (f, g) pair violates f(x) g(x) = x or nonnegativity on a spectrum."""


class BadParameter(NumradError, ValueError):
    pass


class EmptyList(NumradError, ValueError):
    pass


class BadConfig(NumradError, ValueError):
    pass


class NoConvergence(NumradError, ArithmeticError):
    """An iterative kernel exhausted its iteration budget."""
