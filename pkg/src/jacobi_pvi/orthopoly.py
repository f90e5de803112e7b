"""Monic orthogonal polynomials for the generalized Jacobi weight.

Two independent constructions of the recurrence

    x P_n(x) = P_{n+1}(x) + alpha_n P_n(x) + beta_n P_{n-1}(x)

are provided.  ``stieltjes`` runs the Stieltjes procedure on the discrete
measure given by a Gauss-Jacobi rule for ``x**alpha (1-x)**beta`` with the
smooth factor ``(x-t)**gamma`` folded into the weights.  ``cholesky``
factors the Hankel moment matrix built from closed-form (2F1) moments.  The
two share no numerical code beyond the precision layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from gmpy2 import mpfr

from .errors import ConvergenceError, DomainError, PrecisionLossError
from .moments import WeightParams, cholesky, moment_table
from .precision import Real
from .quadrature import MAX_SIZE, START_SIZE, gauss_jacobi_rule

METHODS = ("stieltjes", "cholesky")


@dataclass(frozen=True)
class RecurrenceTable:
    """Recurrence data for ``n = 0..n_max``.

    ``beta_rec[0]`` holds the conventional ``beta_0 = 0``; ``p1[n]`` is the
    coefficient of ``x**(n-1)`` in ``P_n``.  ``rule_size`` records the
    quadrature size behind a ``stieltjes`` table (``None`` for ``cholesky``).
    """

    params: WeightParams
    n_max: int
    alpha_rec: tuple
    beta_rec: tuple
    h: tuple
    p1: tuple
    method: str
    rule_size: int | None = None


@dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Gauss-Jacobi nodes with the smooth factor folded into the weights."""

    nodes: np.ndarray
    weights: np.ndarray

    @classmethod
    def build(cls, p: WeightParams, size: int, shift_zero=0, shift_one=0):
        rule = gauss_jacobi_rule(size, p.alpha - shift_zero, p.beta - shift_one, p.ctx)
        with p.ctx.local():
            return cls(rule.nodes, rule.weights * p.smooth_factor(rule.nodes))

    def integrate(self, values):
        return np.dot(self.weights, values)


def _stieltjes(measure: DiscreteMeasure, n_max: int):
    x, w = measure.nodes, measure.weights
    p_prev = None
    p_cur = np.full(len(x), mpfr(1), dtype=object)
    alphas, betas, norms = [], [mpfr(0)], []
    for n in range(n_max + 1):
        sq = p_cur * p_cur
        h_n = measure.integrate(sq)
        if not h_n > 0:
            raise PrecisionLossError(f"non-positive norm h_{n}", n=n, quantity="h")
        norms.append(h_n)
        alphas.append(np.dot(w * x, sq) / h_n)
        if n > 0:
            betas.append(h_n / norms[n - 1])
        if n == n_max:
            break
        p_next = (x - alphas[n]) * p_cur
        if p_prev is not None:
            p_next = p_next - betas[n] * p_prev
        p_prev, p_cur = p_cur, p_next
    return alphas, betas, norms


@lru_cache(maxsize=1024)
def select_rule_size(p: WeightParams, n_max: int) -> int:
    """Smallest doubled rule size at which the Stieltjes table has converged.

    Sizes run 32, 64, ...; once the tables at ``N`` and ``2N`` agree to
    relative ``10**-(digits + guard_digits // 2)`` in every ``h_n`` and
    ``alpha_n``, ``2N`` is returned.
    """
    ctx = p.ctx
    with ctx.local():
        tol = ctx.power_of_ten(-(ctx.digits + ctx.guard_digits // 2))
        size = max(START_SIZE, 2 * (n_max + 1))
        previous = _stieltjes(DiscreteMeasure.build(p, size), n_max)
        while size < MAX_SIZE:
            size *= 2
            current = _stieltjes(DiscreteMeasure.build(p, size), n_max)
            worst = max(
                max(abs(a - b) / abs(b) for a, b in zip(previous[2], current[2])),
                max(abs(a - b) / max(abs(b), mpfr(1)) for a, b in zip(previous[0], current[0])),
            )
            if worst <= tol:
                return size
            previous = current
        raise ConvergenceError(f"Stieltjes tables did not converge with {MAX_SIZE} nodes")


def _from_cholesky(p: WeightParams, n_max: int):
    ctx = p.ctx
    order = n_max + 2
    moments = moment_table(p, 2 * order - 2, "closed_form")
    lower = cholesky(moments.hankel_matrix(order), ctx)
    with ctx.local():
        norms = [lower[j][j] ** 2 for j in range(order)]
        # P_n = row n of the inverse unit-lower factor, so p1(n) = -L[n][n-1] / L[n-1][n-1].
        p1 = [mpfr(0)] + [-lower[n][n - 1] / lower[n - 1][n - 1] for n in range(1, order)]
        alphas = [p1[n] - p1[n + 1] for n in range(n_max + 1)]
        betas = [mpfr(0)] + [norms[n] / norms[n - 1] for n in range(1, n_max + 1)]
        return alphas, betas, norms[: n_max + 1], p1[: n_max + 1]


def build_recurrence(p: WeightParams, n_max: int, method: str = "stieltjes", rule_size=None) -> RecurrenceTable:
    """Recurrence coefficients, norms and ``p1`` for ``n <= n_max``."""
    if int(n_max) != n_max or n_max < 0:
        raise DomainError("n_max must be a non-negative integer")
    ctx = p.ctx
    if method == "stieltjes":
        size = rule_size or select_rule_size(p, n_max)
        with ctx.local():
            alphas, betas, norms = _stieltjes(DiscreteMeasure.build(p, size), n_max)
            p1 = [mpfr(0)]
            for a in alphas[:-1]:
                p1.append(p1[-1] - a)
        return RecurrenceTable(p, n_max, tuple(alphas), tuple(betas), tuple(norms), tuple(p1), method, size)
    if method == "cholesky":
        alphas, betas, norms, p1 = _from_cholesky(p, n_max)
        return RecurrenceTable(p, n_max, tuple(alphas), tuple(betas), tuple(norms), tuple(p1), method)
    raise DomainError(f"unknown recurrence method {method!r}; expected one of {METHODS}")


def monic_values(x, table: RecurrenceTable, n: int | None = None):
    """``[P_0(x), ..., P_n(x)]`` by upward recurrence (``x`` scalar or array)."""
    n = table.n_max if n is None else n
    if n > table.n_max + 1:
        raise DomainError(f"degree {n} exceeds what the table supports ({table.n_max + 1})")
    with table.params.ctx.local():
        values = [x * 0 + 1]
        if n >= 1:
            values.append(x - table.alpha_rec[0])
        for k in range(1, n):
            values.append((x - table.alpha_rec[k]) * values[k] - table.beta_rec[k] * values[k - 1])
        return values


def eval_monic(n: int, x, table: RecurrenceTable):
    """``P_n(x)``; ``n`` may be at most ``n_max + 1`` (the recurrence defines it)."""
    if n < 0:
        raise DomainError("degree must be non-negative")
    with table.params.ctx.local():
        return monic_values(table.params.ctx.real(x) if not isinstance(x, np.ndarray) else x, table, n)[n]


def norms_product(n: int, table: RecurrenceTable) -> Real:
    """``prod_{j<n} h_j``, which equals the Hankel determinant ``D_n``."""
    if not 0 <= n <= table.n_max + 1:
        raise DomainError(f"n = {n} out of range for a table with n_max = {table.n_max}")
    with table.params.ctx.local():
        result = mpfr(1)
        for h in table.h[:n]:
            result *= h
        return result


def sign_changes(x, table: RecurrenceTable, n: int) -> int:
    """Number of zeros of ``P_n`` above ``x`` (Sturm count of ``P_0..P_n``)."""
    values = [v for v in monic_values(table.params.ctx.real(x), table, n)]
    count, last = 0, None
    for v in values:
        if v == 0:
            continue
        if last is not None and (v > 0) != (last > 0):
            count += 1
        last = v
    return count


def zeros_in_unit_interval(n: int, table: RecurrenceTable) -> bool:
    """True when every zero of ``P_n`` lies strictly inside (0, 1)."""
    return sign_changes(0, table, n) == n and sign_changes(1, table, n) == 0
