"""Ladder-operator quantities and the identities they satisfy.

For the generalized Jacobi weight the ladder coefficients are rational in
``z``::

    A_n(z) = R*_n / z - R_n / (z - 1) + (R_n - R*_n) / (z - t)
    B_n(z) = r*_n / z - r_n / (z - 1) + (r_n - r*_n - n) / (z - t)

``R_n, R*_n, r_n, r*_n`` are computed straight from their integral
definitions (never from the recurrences they satisfy), so each identity
checked here compares genuinely different computations.  The ``1/y`` and
``1/(1-y)`` factors are absorbed into Gauss-Jacobi rules with the endpoint
exponent lowered by one, which is why ``alpha, beta > 0`` is required.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from gmpy2 import mpfr

from . import reports
from .errors import DomainError
from .moments import WeightParams
from .orthopoly import DiscreteMeasure, RecurrenceTable, build_recurrence, monic_values, select_rule_size
from .precision import Real, hyp2f1
from .reports import NOT_APPLICABLE, ResidualReport


class ConditioningWarning(UserWarning):
    """Evaluation point close to a pole of ``A_n`` or ``B_n``."""


@dataclass(frozen=True)
class LadderQuantities:
    n: int
    Rn: Real
    Rn_star: Real
    rn: Real
    rn_star: Real


@dataclass(frozen=True)
class LadderTable:
    """Recurrence table plus ladder quantities for ``n = 0..n_max`` at one ``t``."""

    table: RecurrenceTable
    quantities: tuple

    @property
    def params(self) -> WeightParams:
        return self.table.params

    @property
    def n_max(self) -> int:
        return self.table.n_max

    def __getitem__(self, n) -> LadderQuantities:
        return self.quantities[n]

    def R(self, n):
        return self.quantities[n].Rn

    def R_star(self, n):
        return self.quantities[n].Rn_star

    def r(self, n):
        return self.quantities[n].rn

    def r_star(self, n):
        return self.quantities[n].rn_star


def _ladder_integrals(table: RecurrenceTable, n_values, size):
    p = table.params
    ctx = p.ctx
    top = max(n_values)
    with ctx.local():
        at_zero = DiscreteMeasure.build(p, size, shift_zero=1)
        at_one = DiscreteMeasure.build(p, size, shift_one=1)
        pz = monic_values(at_zero.nodes, table, top)
        po = monic_values(at_one.nodes, table, top)
        out = []
        for n in n_values:
            h = table.h[n]
            r_star_big = p.alpha / h * at_zero.integrate(pz[n] * pz[n])
            r_big = p.beta / h * at_one.integrate(po[n] * po[n])
            if n == 0:
                r_small = r_star_small = mpfr(0)
            else:
                h_prev = table.h[n - 1]
                r_star_small = p.alpha / h_prev * at_zero.integrate(pz[n - 1] * pz[n])
                r_small = p.beta / h_prev * at_one.integrate(po[n - 1] * po[n])
            out.append(LadderQuantities(n, r_big, r_star_big, r_small, r_star_small))
        return out


def ladder_quantities(n: int, p: WeightParams, table: RecurrenceTable) -> LadderQuantities:
    """``R_n, R*_n, r_n, r*_n`` from their integral definitions."""
    if not 0 <= n <= table.n_max:
        raise DomainError(f"n = {n} outside the recurrence table (n_max = {table.n_max})")
    if table.params != p:
        raise DomainError("recurrence table was built for different parameters")
    size = table.rule_size or select_rule_size(p, table.n_max)
    return _ladder_integrals(table, [n], size)[0]


def solve(p: WeightParams, n_max: int, rule_size=None) -> LadderTable:
    """Stieltjes recurrence table and all ladder quantities up to ``n_max``."""
    size = rule_size or select_rule_size(p, n_max)
    table = build_recurrence(p, n_max, "stieltjes", size)
    return LadderTable(table, tuple(_ladder_integrals(table, range(n_max + 1), size)))


def v_prime(z, p: WeightParams):
    """``v'(z)`` for ``v = -ln w``."""
    with p.ctx.local():
        z = p.ctx.real(z)
        return -p.alpha / z - p.beta / (z - 1) - p.gamma / (z - p.t)


def _check_poles(z, p: WeightParams):
    ctx = p.ctx
    near = ctx.power_of_ten(-ctx.digits / 2)
    for pole in (0, 1, p.t):
        if abs(z - pole) < near:
            warnings.warn(f"z is within 1e-{ctx.digits // 2} of the pole at {ctx.format(pole, 8)}", ConditioningWarning)


def A(n, z, lt: LadderTable):
    q, t = lt[n], lt.params.t
    return q.Rn_star / z - q.Rn / (z - 1) + (q.Rn - q.Rn_star) / (z - t)


def B(n, z, lt: LadderTable):
    q, t = lt[n], lt.params.t
    return q.rn_star / z - q.rn / (z - 1) + (q.rn - q.rn_star - n) / (z - t)


def an_bn_eval(n: int, z, lt: LadderTable):
    """``(A_n(z), B_n(z), B_{n+1}(z))`` by the partial-fraction forms."""
    if not 0 <= n < lt.n_max:
        raise DomainError(f"need ladder quantities for n and n+1 (have n_max = {lt.n_max})")
    ctx = lt.params.ctx
    with ctx.local():
        z = ctx.real(z)
        _check_poles(z, lt.params)
        return A(n, z, lt), B(n, z, lt), B(n + 1, z, lt)


def check_compatibility(n: int, z, lt: LadderTable):
    """Residuals of (S1), (S2) and (S2') at ``z``; requires ``n < n_max``."""
    p = lt.params
    ctx = p.ctx
    a_n, b_n, b_next = an_bn_eval(n, z, lt)
    with ctx.local():
        z = ctx.real(z)
        t = p.t
        alpha_n = lt.table.alpha_rec[n]
        beta_n = lt.table.beta_rec[n]
        vp = v_prime(z, p)
        s1 = [b_next, b_n, -(z - alpha_n) * a_n, vp]
        s2 = [1, (z - alpha_n) * (b_next - b_n), -lt.table.beta_rec[n + 1] * A(n + 1, z, lt)]
        s2p = [b_n**2, vp * b_n, sum((A(j, z, lt) for j in range(n)), mpfr(0))]
        if n > 0:
            s2.append(beta_n * A(n - 1, z, lt))
            s2p.append(-beta_n * a_n * A(n - 1, z, lt))
        return [
            reports.from_terms("S1", n, t, s1, ctx, z=z),
            reports.from_terms("S2", n, t, s2, ctx, z=z),
            reports.from_terms("S2'", n, t, s2p, ctx, z=z),
        ]


def _closed_form_n0(p: WeightParams):
    a, b, g, ctx = p.alpha, p.beta, p.gamma, p.ctx
    z = 1 / p.t
    base = hyp2f1(a + 1, -g, a + b + 2, z, ctx)
    alpha0 = (a + 1) * hyp2f1(a + 2, -g, a + b + 3, z, ctx) / ((a + b + 2) * base)
    big_r0 = (a + b + 1) * hyp2f1(a + 1, -g, a + b + 1, z, ctx) / base
    return alpha0, big_r0


def closed_form_R0(p: WeightParams) -> Real:
    """``R_0(t)`` from the ratio of two 2F1 values."""
    with p.ctx.local():
        return _closed_form_n0(p)[1]


def check_sum_rules(n: int, lt: LadderTable):
    """Residuals of every algebraic relation among the ladder quantities at ``n``.

    Requires ``n < n_max`` because several relations involve ``n + 1``.
    Relations that involve ``n - 1`` are reported as not applicable at ``n = 0``.
    """
    if not 0 <= n < lt.n_max:
        raise DomainError(f"sum rules at n = {n} need ladder quantities up to n + 1 (n_max = {lt.n_max})")
    p = lt.params
    ctx = p.ctx
    tab = lt.table
    a, b, g, t = p.alpha, p.beta, p.gamma, p.t
    out = []

    def add(identity, terms):
        out.append(reports.from_terms(identity, n, t, terms, ctx))

    with ctx.local():
        c = a + b + g
        al, be, p1 = tab.alpha_rec, tab.beta_rec, tab.p1
        q, nxt = lt[n], lt[n + 1]
        Rn, Rs, rn, rs = q.Rn, q.Rn_star, q.rn, q.rn_star
        add("r-r1", [nxt.rn_star, rs, -a, al[n] * Rs])
        add("r-r2", [nxt.rn, rn, -(1 - al[n]) * Rn, b])
        add("r-r3", [t * Rs, -(t - 1) * Rn, -(2 * n + 1 + c)])
        add("Rsum", [
            sum((lt.R(j) for j in range(n)), mpfr(0)),
            -(2 * n + c) * (rn - rs),
            n * (n + g),
            -((2 * n + c) * rs + n * (n + b + g)) / (1 - t),
        ])
        add("r&r4", [(t - 1) * (nxt.rn - rn), -t * (nxt.rn_star - rs), -t, al[n]])
        p1_next = p1[n] - al[n]
        add("alpha-p1n", [al[n], -p1[n], p1_next])
        add("alphasum-p1n", [-sum(al[:n], mpfr(0)), -p1[n]])
        add("p1n-rs", [p1[n], -(t - 1) * rn, t * rs, n * t])
        add("alpha-rs", [(2 * n + 2 + c) * al[n], -2 * (t - 1) * rn, 2 * t * rs, -(1 - t) * Rn, -(a + b + 1) * t, b])
        needs_previous = ("r&R", "r*&R*", "r&R&R*", "beta-r-r*")
        if n == 0:
            for identity in needs_previous:
                out.append(reports.placeholder(identity, n, t, NOT_APPLICABLE, "involves n - 1", ctx))
            alpha0, big_r0 = _closed_form_n0(p)
            add("alpha0-2F1", [al[0], -alpha0])
            add("R0-2F1", [Rn, -big_r0])
        else:
            prev = lt[n - 1]
            add("r&R", [rs**2, -a * rs, -be[n] * Rs * prev.Rn_star])
            add("r*&R*", [rn**2, b * rn, -be[n] * Rn * prev.Rn])
            add("r&R&R*", [
                (2 * n + b + g) * rn,
                -(2 * n + a + g) * rs,
                2 * rn * rs,
                -n * (n + g),
                -be[n] * (prev.Rn * Rs + Rn * prev.Rn_star),
            ])
            add("beta-r-r*", [
                (2 * n - 1 + c) * (2 * n + 1 + c) * be[n],
                -(t * rs - (t - 1) * rn) ** 2,
                (t - 1) * (2 * n * t + g * t + b) * rn,
                -t * ((t - 1) * (2 * n + g) - a) * rs,
                -n * (n + g) * (t * t - t),
            ])
    return out


def check_a_decay(n: int, lt: LadderTable, z=None) -> ResidualReport:
    """``z**2 A_n(z) + (2n+1+alpha+beta+gamma) = O(1/z)`` at large ``z``.

    The tolerance is ten times the leading ``1/z`` coefficient
    ``|R_n| + |R_n - R*_n| t**2`` divided by ``z``.
    """
    p = lt.params
    ctx = p.ctx
    with ctx.local():
        z = ctx.real(10**8 if z is None else z)
        q = lt[n]
        terms = [z * z * A(n, z, lt), 2 * n + 1 + p.alpha + p.beta + p.gamma]
        coeff = abs(q.Rn) + abs(q.Rn - q.Rn_star) * p.t**2
        scale = 1 + max(abs(v) for v in terms)
        return reports.from_terms("A-decay", n, p.t, terms, ctx, tolerance=10 * coeff / abs(z) / scale, z=z)


def check_positivity(lt: LadderTable):
    """``R_n > 0`` and ``R*_n > 0`` for every tabulated ``n``."""
    return all(q.Rn > 0 and q.Rn_star > 0 for q in lt.quantities)
