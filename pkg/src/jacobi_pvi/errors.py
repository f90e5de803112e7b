"""Exception hierarchy shared by every module of the package."""


class JacobiPVIError(Exception):
    """Base class for all errors raised by :mod:`jacobi_pvi`."""


class DomainError(JacobiPVIError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PrecisionLossError(JacobiPVIError, ArithmeticError):
    """Working precision is insufficient for the requested computation.

    Parameters
    ----------
    message : str
        Human readable description.
    n : int, optional
        Index at which precision ran out (e.g. the failing Cholesky pivot).
    quantity : str, optional
        Name of the quantity being computed when the loss was detected.
    """

    def __init__(self, message, n=None, quantity=None):
        super().__init__(message)
        self.n = n
        self.quantity = quantity


class ConvergenceError(JacobiPVIError, ArithmeticError):
    """An iterative procedure failed to converge within its budget.

    The last two estimates are kept on the exception so callers can judge
    how far from convergence the computation was.
    """

    def __init__(self, message, previous=None, last=None):
        super().__init__(message)
        self.previous = previous
        self.last = last


class DegeneratePointError(JacobiPVIError, ArithmeticError):
    """A residual was requested at a genuine pole of the equation."""
