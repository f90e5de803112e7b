"""The generalized Jacobi weight, its power moments and Hankel determinants.

The weight is ``w(x; t) = (x - t)**gamma * x**alpha * (1 - x)**beta`` on
[0, 1] with ``alpha, beta > 0``, ``t < 0`` and real ``gamma``.  Moments are
available from two independent routes: the Euler integral of 2F1 and
Gauss-Jacobi quadrature of the smooth factor ``(x - t)**gamma``.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from functools import lru_cache

import gmpy2
from gmpy2 import mpfr

from .errors import DomainError, PrecisionLossError
from .precision import PrecisionContext, Real, beta_fn, hyp2f1
from .quadrature import integrate_factor

METHODS = ("closed_form", "quadrature")


@dataclass(frozen=True)
class WeightParams:
    """One problem instance ``(alpha, beta, gamma, t)`` at a fixed precision.

    Inputs may be decimal strings, ints, Fractions or mpfr values; they are
    converted to working precision on construction.
    """

    alpha: Real
    beta: Real
    gamma: Real
    t: Real
    ctx: PrecisionContext

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "t"):
            object.__setattr__(self, name, self.ctx.real(getattr(self, name)))
        if not self.alpha > 0:
            raise DomainError("alpha must be positive")
        if not self.beta > 0:
            raise DomainError("beta must be positive")
        if not self.t < 0:
            raise DomainError("t must be negative")

    @classmethod
    def create(cls, alpha, beta, gamma, t, digits=50, guard_digits=15):
        return cls(alpha, beta, gamma, t, PrecisionContext(digits, guard_digits))

    def with_t(self, t) -> "WeightParams":
        return dataclasses.replace(self, t=t)

    def with_context(self, ctx: PrecisionContext) -> "WeightParams":
        """Same instance at another precision.

        Stored values are converted, not re-parsed: build from decimal strings
        at the target precision when parameters are not exactly representable.
        """
        return WeightParams(self.alpha, self.beta, self.gamma, self.t, ctx)

    def smooth_factor(self, x):
        """``(x - t)**gamma``; broadcasts over object arrays."""
        return (x - self.t) ** self.gamma


@dataclass(frozen=True)
class MomentTable:
    """Power moments ``mu[k]``, ``k = 0..k_max``."""

    params: WeightParams
    mu: tuple
    method: str

    @property
    def k_max(self) -> int:
        return len(self.mu) - 1

    def hankel_matrix(self, n):
        return [[self.mu[j + k] for k in range(n)] for j in range(n)]


def weight_eval(x, p: WeightParams) -> Real:
    ctx = p.ctx
    with ctx.local():
        x = ctx.real(x)
        if not 0 <= x <= 1:
            raise DomainError("weight is defined on [0, 1] only")
        if x == 0 or x == 1:
            if (x == 0 and p.alpha > 0) or (x == 1 and p.beta > 0):
                return mpfr(0)
        return p.smooth_factor(x) * x**p.alpha * (1 - x) ** p.beta


@lru_cache(maxsize=4096)
def moment(k: int, p: WeightParams, method: str = "closed_form") -> Real:
    """``mu_k = int_0^1 x**k w(x; t) dx``.

    ``closed_form`` uses ``(-t)**gamma B(k+alpha+1, beta+1)
    2F1(-gamma, k+alpha+1; k+alpha+beta+2; 1/t)``; ``quadrature`` integrates
    ``(x - t)**gamma`` against ``x**(k+alpha) (1-x)**beta``.
    """
    if int(k) != k or k < 0:
        raise DomainError(f"moment index must be a non-negative integer, got {k!r}")
    ctx = p.ctx
    with ctx.local():
        a = k + p.alpha
        if method == "closed_form":
            return (
                (-p.t) ** p.gamma
                * beta_fn(a + 1, p.beta + 1, ctx)
                * hyp2f1(-p.gamma, a + 1, a + p.beta + 2, 1 / p.t, ctx)
            )
        if method == "quadrature":
            return integrate_factor(p.smooth_factor, a, p.beta, ctx)
    raise DomainError(f"unknown moment method {method!r}; expected one of {METHODS}")


def moment_table(p: WeightParams, k_max: int, method: str = "closed_form") -> MomentTable:
    return MomentTable(p, tuple(moment(k, p, method) for k in range(k_max + 1)), method)


def cholesky(matrix, ctx: PrecisionContext):
    """Lower Cholesky factor of a symmetric positive definite matrix.

    Raises :class:`PrecisionLossError` naming the first non-positive pivot;
    for Hankel matrices that means the working precision is too low for the
    requested order.
    """
    size = len(matrix)
    with ctx.local():
        lower = [[mpfr(0)] * size for _ in range(size)]
        for j in range(size):
            pivot = matrix[j][j] - sum(lower[j][k] ** 2 for k in range(j))
            if not pivot > 0:
                raise PrecisionLossError(
                    f"Cholesky pivot {j} is not positive; raise digits (roughly 30 + 10*n are needed)",
                    n=j,
                    quantity="hankel pivot",
                )
            lower[j][j] = gmpy2.sqrt(pivot)
            for i in range(j + 1, size):
                lower[i][j] = (matrix[i][j] - sum(lower[i][k] * lower[j][k] for k in range(j))) / lower[j][j]
        return lower


def hankel_det(n: int, p: WeightParams, method: str = "closed_form") -> Real:
    """``D_n = det(mu_{j+k})_{j,k<n}`` via Cholesky, with ``D_0 = 1``."""
    if int(n) != n or n < 0:
        raise DomainError("Hankel order must be a non-negative integer")
    ctx = p.ctx
    with ctx.local():
        if n == 0:
            return mpfr(1)
        table = moment_table(p, 2 * n - 2, method)
        lower = cholesky(table.hankel_matrix(n), ctx)
        det = mpfr(1)
        for j in range(n):
            det *= lower[j][j] ** 2
        return det
