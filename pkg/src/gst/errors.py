"""Exception hierarchy shared by all gst modules."""


class GSTError(Exception):
    """Base class for every error raised by the package."""


class DomainError(GSTError, ValueError):
    """An argument lies outside the domain where an operation is defined."""


class PoleError(DomainError):
    """Evaluation at a pole (e.g. the gamma function at a non-positive integer)."""


class EvaluationError(GSTError, ArithmeticError):
    """An integrand produced NaN or infinity at a sample point."""


class NonConvergence(GSTError, ArithmeticError):
    """A quadrature or series did not reach its tolerance.

    The best available estimate is kept on ``result`` so that callers may
    decide to accept it anyway.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class SeriesTruncationError(NonConvergence):
    """A truncated power series left a tail larger than the tolerance."""


class ResidualImaginaryError(GSTError, ArithmeticError):
    """A quantity that must be real came back with a large imaginary part.

    For the inverse transforms this almost always means the supplied G
    violates its analyticity contract or uses the wrong branch.
    """

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value
