"""Gauss-Jacobi quadrature on [0, 1] at arbitrary precision.

Rules integrate ``f(x) * x**a * (1 - x)**b``; the algebraic endpoint
factors are carried by the rule and only the smooth part ``f`` is sampled.
Nodes start from double precision roots (scipy) and are polished by Newton
iteration on the monic three-term recurrence, doubling the precision at
each step so that only the final sweep runs at full working precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import gmpy2
import numpy as np
from gmpy2 import mpfr
from scipy.special import roots_jacobi

from .errors import ConvergenceError, DomainError, PrecisionLossError
from .precision import PrecisionContext, Real, beta_fn

START_SIZE = 32
MAX_SIZE = 2**16


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Immutable Gauss-Jacobi rule for the weight ``x**a (1-x)**b`` on [0, 1].

    ``nodes`` and ``weights`` are read-only object arrays of mpfr values.
    """

    exponent_at_zero: Real
    exponent_at_one: Real
    nodes: np.ndarray
    weights: np.ndarray

    @property
    def size(self) -> int:
        return len(self.nodes)

    def apply(self, values):
        """Weighted sum of sampled values (an object array of length ``size``)."""
        return np.dot(self.weights, values)


def jacobi_recurrence(size, a, b):
    """Monic recurrence coefficients for ``x**a (1-x)**b`` on [0, 1].

    Returns lists ``(alphas, betas)`` of length ``size``; ``betas[0]`` is 0.
    Must be called inside an active precision context.
    """
    # On [-1, 1] the weight is (1-u)**b (1+u)**a; x = (1+u)/2.
    p, q = b, a
    alphas, betas = [], [mpfr(0)]
    for n in range(size):
        s = 2 * n + p + q
        if n == 0:
            an = (q - p) / (p + q + 2)
        else:
            an = (q * q - p * p) / (s * (s + 2))
        alphas.append((1 + an) / 2)
        if n == 1:
            betas.append((1 + p) * (1 + q) / ((2 + p + q) ** 2 * (3 + p + q)))
        elif n > 1:
            betas.append(n * (n + p) * (n + q) * (n + p + q) / (s * s * (s + 1) * (s - 1)))
    return alphas, betas


def _newton_sweep(x, alphas, betas):
    size = len(x)
    p_prev = np.full(size, mpfr(1), dtype=object)
    p_cur = x - alphas[0]
    d_prev = np.full(size, mpfr(0), dtype=object)
    d_cur = np.full(size, mpfr(1), dtype=object)
    for n in range(1, len(alphas)):
        shifted = x - alphas[n]
        p_next = shifted * p_cur - betas[n] * p_prev
        d_next = p_cur + shifted * d_cur - betas[n] * d_prev
        p_prev, p_cur, d_prev, d_cur = p_cur, p_next, d_cur, d_next
    return p_prev, p_cur, d_cur


def _build_rule(size, a, b, bits):
    guess, _ = roots_jacobi(size, float(b), float(a))
    x = np.array([mpfr((g + 1) / 2) for g in guess], dtype=object)
    prec = 106
    while True:
        prec = min(2 * prec, bits)
        with gmpy2.context(gmpy2.get_context(), precision=prec):
            alphas, betas = jacobi_recurrence(size, mpfr(a), mpfr(b))
            x = np.array([mpfr(v) for v in x], dtype=object)
            _, p_n, dp_n = _newton_sweep(x, alphas, betas)
            step = p_n / dp_n
            x = x - step
            if prec == bits:
                break
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        alphas, betas = jacobi_recurrence(size, mpfr(a), mpfr(b))
        for _ in range(3):
            _, p_n, dp_n = _newton_sweep(x, alphas, betas)
            step = p_n / dp_n
            x = x - step
            if max(abs(s) for s in step) <= mpfr(2) ** (8 - bits):
                break
        else:
            raise PrecisionLossError(
                f"Newton iteration for {size}-point Gauss-Jacobi nodes did not settle",
                quantity="quadrature nodes",
            )
        p_prev, _, dp_n = _newton_sweep(x, alphas, betas)
        norm = gmpy2.exp(gmpy2.lgamma(a + 1)[0] + gmpy2.lgamma(b + 1)[0] - gmpy2.lgamma(a + b + 2)[0])
        for beta in betas[1:]:
            norm *= beta
        w = norm / (p_prev * dp_n)
    if not (x[0] > 0 and x[-1] < 1 and all(x[i] < x[i + 1] for i in range(size - 1))):
        raise PrecisionLossError("Gauss-Jacobi nodes not strictly inside (0, 1)", quantity="quadrature nodes")
    if not all(v > 0 for v in w):
        raise PrecisionLossError("non-positive Gauss-Jacobi weight", quantity="quadrature weights")
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


@lru_cache(maxsize=256)
def _cached_rule(size, a, b, bits):
    return _build_rule(size, a, b, bits)


def gauss_jacobi_rule(size: int, a, b, ctx: PrecisionContext) -> QuadratureRule:
    """``size``-point Gauss rule for ``x**a (1-x)**b`` on [0, 1].

    Exact for polynomials of degree ``2*size - 1``.  Rules are cached per
    ``(size, a, b, precision)``.
    """
    if int(size) != size or size < 1:
        raise DomainError(f"rule size must be a positive integer, got {size!r}")
    with ctx.local():
        a, b = ctx.real(a), ctx.real(b)
        if not (a > -1 and b > -1):
            raise DomainError("Gauss-Jacobi exponents must exceed -1")
        if size == 1:
            node = (a + 1) / (a + b + 2)
            x = np.array([node], dtype=object)
            w = np.array([beta_fn(a + 1, b + 1, ctx)], dtype=object)
            x.flags.writeable = False
            w.flags.writeable = False
        else:
            x, w = _cached_rule(int(size), a, b, ctx.bits)
        return QuadratureRule(a, b, x, w)


def integrate_factor(f, a, b, ctx: PrecisionContext, tol=None) -> Real:
    """Integrate ``f(x) x**a (1-x)**b`` over [0, 1] with doubling rules.

    ``f`` is called with an object array of nodes and must broadcast over
    it.  Rule sizes run 32, 64, ... until two successive estimates agree to
    relative ``tol`` (default ``10**-(digits + guard_digits // 2)``); the
    later estimate is returned.

    Raises
    ------
    ConvergenceError
        If no agreement is reached with at most ``2**16`` nodes.
    """
    with ctx.local():
        if tol is None:
            tol = ctx.power_of_ten(-(ctx.digits + ctx.guard_digits // 2))
        tol = ctx.real(tol)
        size = START_SIZE
        rule = gauss_jacobi_rule(size, a, b, ctx)
        previous = rule.apply(np.asarray(f(rule.nodes), dtype=object) * np.ones(size, dtype=object))
        while size < MAX_SIZE:
            size *= 2
            rule = gauss_jacobi_rule(size, a, b, ctx)
            current = rule.apply(np.asarray(f(rule.nodes), dtype=object) * np.ones(size, dtype=object))
            if abs(current - previous) <= tol * abs(current):
                return current
            previous = current
        raise ConvergenceError(
            f"quadrature did not converge with {MAX_SIZE} nodes", previous=previous, last=current
        )
