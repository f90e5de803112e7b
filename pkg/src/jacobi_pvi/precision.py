"""Extended-precision context and the special functions built on it.

All reals are :class:`gmpy2.mpfr` values.  A :class:`PrecisionContext`
fixes the number of reported decimal digits plus a number of guard digits
carried internally; every public routine of the package runs its arithmetic
inside ``with ctx.local():`` so results never depend on whatever gmpy2
context happens to be active in the calling thread.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from .errors import DomainError, PrecisionLossError

Real = type(mpfr(0))

_LOG2_10 = math.log2(10)

# Consecutive below-threshold terms required before a series is truncated.
_TAIL_TERMS = 20
_MAX_SERIES_TERMS = 200_000


@dataclass(frozen=True)
class PrecisionContext:
    """Decimal working precision.

    Parameters
    ----------
    digits : int
        Decimal digits results are reported at; must be at least 30.
    guard_digits : int
        Extra decimal digits carried internally.
    """

    digits: int
    guard_digits: int = 15

    def __post_init__(self):
        if int(self.digits) != self.digits or self.digits < 30:
            raise DomainError(f"digits must be an integer >= 30, got {self.digits!r}")
        if int(self.guard_digits) != self.guard_digits or self.guard_digits < 0:
            raise DomainError(f"guard_digits must be a non-negative integer, got {self.guard_digits!r}")

    @property
    def working_digits(self) -> int:
        return self.digits + self.guard_digits

    @property
    def bits(self) -> int:
        return math.ceil(self.working_digits * _LOG2_10) + 4

    def local(self):
        """Context manager activating this precision for the current thread."""
        return gmpy2.context(gmpy2.get_context(), precision=self.bits)

    def real(self, value) -> Real:
        """Convert ``value`` to a working-precision real.

        Strings are parsed as decimals directly at working precision, so
        ``"0.1"`` never passes through a binary double.
        """
        with self.local():
            if isinstance(value, Fraction):
                return mpfr(value.numerator) / mpfr(value.denominator)
            if isinstance(value, Real):
                return mpfr(value)
            if isinstance(value, str):
                return mpfr(value.strip())
            if isinstance(value, (int, float)) or type(value).__name__ == "mpz":
                return mpfr(value)
            if type(value).__name__ == "mpq":
                return mpfr(value)
            raise TypeError(f"cannot convert {type(value).__name__} to a real")

    def eps(self) -> Real:
        """Unit of the last working digit, ``10**-(digits + guard_digits)``."""
        with self.local():
            return mpfr(10) ** (-self.working_digits)

    def power_of_ten(self, exponent) -> Real:
        with self.local():
            return mpfr(10) ** exponent

    def format(self, x, digits=None) -> str:
        """Decimal string of ``x`` with ``digits`` significant digits."""
        d = self.digits if digits is None else digits
        with self.local():
            return format(mpfr(x), f".{d}g")


def is_nonpositive_integer(x) -> bool:
    return gmpy2.is_integer(x) and x <= 0


def log_gamma(x, ctx: PrecisionContext) -> Real:
    """Natural logarithm of the gamma function for ``x > 0``."""
    with ctx.local():
        x = ctx.real(x)
        if not x > 0:
            raise DomainError(f"log_gamma requires x > 0, got {ctx.format(x)}")
        return gmpy2.lgamma(x)[0]


def beta_fn(a, b, ctx: PrecisionContext) -> Real:
    """Euler beta function ``B(a, b)`` for positive arguments."""
    with ctx.local():
        a, b = ctx.real(a), ctx.real(b)
        if not (a > 0 and b > 0):
            raise DomainError("beta_fn requires a > 0 and b > 0")
        return gmpy2.exp(log_gamma(a, ctx) + log_gamma(b, ctx) - log_gamma(a + b, ctx))


def _series(a, b, c, z, eps, terminating_at=None):
    total = mpfr(1)
    term = mpfr(1)
    small = 0
    k = 0
    while True:
        if terminating_at is not None and k >= terminating_at:
            return total
        term = term * (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        total += term
        k += 1
        if terminating_at is not None:
            continue
        if abs(term) <= eps * abs(total):
            small += 1
            if small >= _TAIL_TERMS:
                return total
        else:
            small = 0
        if k > _MAX_SERIES_TERMS:
            raise PrecisionLossError(
                f"2F1 series did not converge within {_MAX_SERIES_TERMS} terms", quantity="hyp2f1"
            )


def hyp2f1(a, b, c, z, ctx: PrecisionContext) -> Real:
    """Gauss hypergeometric function for real arguments and ``z < 1``.

    For ``z < -1/2`` the Pfaff transformation
    ``2F1(a,b;c;z) = (1-z)**(-a) 2F1(a, c-b; c; z/(z-1))`` maps the argument
    into ``[1/3, 1)``; otherwise the defining series is summed directly.
    A non-positive integer numerator parameter gives a finite sum.
    """
    with ctx.local():
        a, b, c, z = (ctx.real(v) for v in (a, b, c, z))
        if is_nonpositive_integer(c):
            raise DomainError(f"2F1 undefined for non-positive integer c = {ctx.format(c)}")
        if not z < 1:
            raise DomainError(f"hyp2f1 requires z < 1, got {ctx.format(z)}")
        if z == 0:
            return mpfr(1)
        if is_nonpositive_integer(b) and not is_nonpositive_integer(a):
            a, b = b, a
        eps = ctx.eps()
        terminating = int(-a) + 1 if is_nonpositive_integer(a) else None
        if z < -0.5:
            w = z / (z - 1)
            b2 = c - b
            if terminating is None and is_nonpositive_integer(b2):
                terminating = int(-b2) + 1
            return (1 - z) ** (-a) * _series(a, b2, c, w, eps, terminating)
        if terminating is None and is_nonpositive_integer(b):
            terminating = int(-b) + 1
        return _series(a, b, c, z, eps, terminating)
