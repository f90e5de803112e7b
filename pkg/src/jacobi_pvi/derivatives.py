"""Central finite differences in ``t`` with a Richardson error estimate."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .precision import PrecisionContext, Real

# Five-point central stencils: offsets -2..2 in units of the step.
_FIRST = (1, -8, 0, 8, -1)
_SECOND = (-1, 16, -30, 16, -1)


@dataclass(frozen=True)
class DerivativeEstimate:
    """A numerical derivative and its error estimate.

    ``value`` is the Richardson-extrapolated estimate from steps ``h`` and
    ``h/2``.  ``error_estimate`` is the absolute difference of the two raw
    stencil values (truncation) plus the roundoff bound of the ``h/2``
    stencil, ``sum|c_k| eps max|f| / (12 (h/2)**order)``.
    """

    value: Real
    order: int
    step: Real
    error_estimate: Real


def default_step(ctx: PrecisionContext) -> Real:
    """``10**(-digits/4)``, balancing ``O(h**4)`` truncation against roundoff."""
    return ctx.power_of_ten(-ctx.digits / 4)


def _stencil(f, t0, h, order):
    """Stencil value and the largest ``|f|`` sampled."""
    coeffs = _FIRST if order == 1 else _SECOND
    total, biggest = 0, 0
    for offset, c in zip(range(-2, 3), coeffs):
        if c:
            v = f(t0 + offset * h)
            total += c * v
            biggest = max(biggest, abs(v))
    return total / (12 * h**order), biggest


def finite_diff(f, t0, order: int, ctx: PrecisionContext, step=None) -> DerivativeEstimate:
    """First or second derivative of ``f`` at ``t0 < 0``.

    ``f`` must be evaluable on ``[t0 - 2h, t0 + 2h]``; the step is rejected
    unless ``t0 + 4h < 0`` so stencils never approach the singular point
    ``t = 0`` of the weight family.
    """
    if order not in (1, 2):
        raise DomainError("only first and second derivatives are supported")
    with ctx.local():
        t0 = ctx.real(t0)
        h = default_step(ctx) if step is None else ctx.real(step)
        if not t0 + 4 * h < 0:
            raise DomainError("finite-difference stencil would cross t = 0")
        coarse, _ = _stencil(f, t0, h, order)
        fine, biggest = _stencil(f, t0, h / 2, order)
        coeffs = _FIRST if order == 1 else _SECOND
        roundoff = sum(abs(c) for c in coeffs) * ctx.eps() * biggest / (12 * (h / 2) ** order)
        value = fine + (fine - coarse) / 15
        return DerivativeEstimate(value, order, h, abs(fine - coarse) + roundoff)
