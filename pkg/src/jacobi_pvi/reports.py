"""Residual reports: one verified identity at one point.

An identity ``LHS = RHS`` is handed over as the list of additive terms of
``LHS - RHS``.  The raw residual is the absolute value of their sum and the
normalized residual divides by ``1 + max |term|`` so identities whose terms
grow quickly with ``n`` remain comparable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpfr

from .precision import PrecisionContext, Real

CHECKED = "checked"
SKIPPED = "skipped"
NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class ResidualReport:
    """Outcome of one identity check.

    ``derivative_error_budget`` is in normalized units and is zero for
    identities that involve no numerical derivative.  ``tolerance`` is the
    normalized threshold the residual is judged against.
    """

    identity_id: str
    n: int
    t: Real
    raw_residual: Real
    normalized_residual: Real
    derivative_error_budget: Real
    tolerance: Real
    status: str = CHECKED
    z: Real | None = None
    note: str = field(default="", compare=False)

    @property
    def passed(self) -> bool:
        return self.status != CHECKED or self.normalized_residual <= self.tolerance

    def sort_key(self):
        return (self.identity_id, self.n, self.t, self.z if self.z is not None else mpfr(0))

    def to_dict(self, ctx: PrecisionContext) -> dict:
        record = {
            "identity_id": self.identity_id,
            "n": self.n,
            "t": ctx.format(self.t),
            "raw_residual": ctx.format(self.raw_residual, 6),
            "normalized_residual": ctx.format(self.normalized_residual, 6),
            "derivative_error_budget": ctx.format(self.derivative_error_budget, 6),
            "tolerance": ctx.format(self.tolerance, 6),
            "status": self.status,
            "passed": self.passed,
        }
        if self.z is not None:
            record["z"] = ctx.format(self.z)
        if self.note:
            record["note"] = self.note
        return record


def sorted_reports(reports):
    return sorted(reports, key=ResidualReport.sort_key)


def identity_tolerance(ctx: PrecisionContext, n: int) -> Real:
    """Threshold for derivative-free identities: ``10**(-digits + 10 n)``, capped at ``10**(-digits/2)``."""
    with ctx.local():
        return ctx.power_of_ten(min(-ctx.digits + 10 * n, -ctx.digits / 2))


def noise_floor(ctx: PrecisionContext) -> Real:
    """Pointwise evaluation error allowance, in normalized units."""
    return ctx.power_of_ten(-ctx.digits)


def _scale(terms):
    return 1 + max(abs(v) for v in terms)


def from_terms(identity_id, n, t, terms, ctx: PrecisionContext, tolerance=None, z=None, note="") -> ResidualReport:
    """Report for a derivative-free identity given the terms of ``LHS - RHS``."""
    with ctx.local():
        terms = [mpfr(v) for v in terms]
        raw = abs(sum(terms))
        normalized = raw / _scale(terms)
        if tolerance is None:
            tolerance = identity_tolerance(ctx, n)
        return ResidualReport(identity_id, n, t, raw, normalized, mpfr(0), mpfr(tolerance), CHECKED, z, note)


def from_derivatives(identity_id, n, t, term_fn, values, errors, ctx: PrecisionContext, note="") -> ResidualReport:
    """Report for an identity that uses numerically differentiated inputs.

    ``term_fn(**values)`` returns the terms of ``LHS - RHS``.  Each entry of
    ``errors`` (keyed like ``values``) is the error estimate of a numerical
    derivative; it is pushed through ``term_fn`` one input at a time and the
    absolute changes are summed.  The budget, in normalized units, adds the
    pointwise noise floor; the tolerance is ten times the budget.
    """
    with ctx.local():
        terms = [mpfr(v) for v in term_fn(**values)]
        total = sum(terms)
        scale = _scale(terms)
        propagated = mpfr(0)
        for key, err in errors.items():
            if err == 0:
                continue
            shifted = dict(values)
            shifted[key] = values[key] + err
            propagated += abs(sum(term_fn(**shifted)) - total)
        budget = propagated / scale + noise_floor(ctx)
        raw = abs(total)
        return ResidualReport(identity_id, n, t, raw, raw / scale, budget, 10 * budget, CHECKED, None, note)


def placeholder(identity_id, n, t, status, note, ctx: PrecisionContext) -> ResidualReport:
    """Report for a point that was deliberately not evaluated."""
    with ctx.local():
        zero = mpfr(0)
        return ResidualReport(identity_id, n, t, zero, zero, zero, zero, status, None, note)
