"""Painleve VI verification: the sigma form for H_n and PVI for W_n.

``H_n = t(t-1) d/dt ln D_n`` is evaluated without numerical
differentiation from the ladder quantities,

    H_n  = (t-1) [n(n+a+b+g) - sum_{j<n} R_j]
    H_n' = [H_n - n(n+b+g) - (2n+a+b+g) r*_n] / (t-1),

so the sigma form needs just one finite difference (for ``H_n''``).  Every
residual that depends on a numerical derivative carries the propagated
Richardson error estimate as its budget.

All quantities at the points of one finite-difference stencil are computed
with the same quadrature size, chosen at the stencil centre, so the
discretization error is a smooth function of ``t`` and does not leak into
the difference quotients.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2
from gmpy2 import mpfr

from . import reports
from .derivatives import DerivativeEstimate, finite_diff
from .errors import DegeneratePointError, DomainError
from .ladder import LadderTable, solve
from .moments import WeightParams
from .orthopoly import norms_product, select_rule_size
from .precision import PrecisionContext, Real
from .reports import NOT_APPLICABLE, SKIPPED, ResidualReport

DEFAULT_T_GRID = ("-0.25", "-0.5", "-1", "-2", "-5")
ASYMPTOTIC_T = ("-1000", "-10000", "-100000", "-1000000")


@dataclass(frozen=True)
class SigmaConstants:
    d1: Real
    d2: Real
    nu: tuple


@dataclass(frozen=True)
class PviConstants:
    mu: tuple


def sigma_constants(n, alpha, beta, gamma) -> SigmaConstants:
    s = n * (n + alpha + beta + gamma)
    d1 = -s - (alpha + beta) ** 2 / 4
    d2 = (2 * s + beta * (alpha + beta) - gamma * (alpha - beta)) / 4
    nu = ((alpha + beta) / 2, (beta - alpha) / 2, (2 * n + alpha + beta) / 2, (2 * n + alpha + beta + 2 * gamma) / 2)
    return SigmaConstants(d1, d2, nu)


def pvi_constants(n, alpha, beta, gamma) -> PviConstants:
    return PviConstants((
        (2 * n + alpha + beta + gamma + 1) ** 2 / 2,
        -(alpha**2) / 2,
        beta**2 / 2,
        (1 - gamma**2) / 2,
    ))


class Family:
    """The weight family with ``t`` left free.

    Solutions are memoized per ``(t, rule_size)`` so the overlapping points
    of nested stencils are computed once.
    """

    def __init__(self, alpha, beta, gamma, ctx: PrecisionContext, n_max: int):
        self.ctx = ctx
        self.alpha = ctx.real(alpha)
        self.beta = ctx.real(beta)
        self.gamma = ctx.real(gamma)
        self.n_max = n_max
        self._solutions = {}

    @classmethod
    def from_params(cls, p: WeightParams, n_max: int) -> "Family":
        return cls(p.alpha, p.beta, p.gamma, p.ctx, n_max)

    def params(self, t) -> WeightParams:
        return WeightParams(self.alpha, self.beta, self.gamma, t, self.ctx)

    def rule_size(self, t) -> int:
        return select_rule_size(self.params(t), self.n_max)

    def solve(self, t, rule_size=None) -> LadderTable:
        t = self.ctx.real(t)
        size = rule_size or self.rule_size(t)
        key = (t, size)
        if key not in self._solutions:
            self._solutions[key] = solve(self.params(t), self.n_max, size)
        return self._solutions[key]

    def derivative(self, fn, t, order, rule_size) -> DerivativeEstimate:
        """Finite difference of ``fn(ladder_table)`` along ``t``."""
        return finite_diff(lambda s: fn(self.solve(s, rule_size)), t, order, self.ctx)

    @property
    def c(self):
        return self.alpha + self.beta + self.gamma

    def _require(self, n):
        if not 0 <= n <= self.n_max:
            raise DomainError(f"n = {n} exceeds the family's n_max = {self.n_max}")


def _h_pair(n, lt: LadderTable, fam: Family):
    t = lt.params.t
    c = fam.c
    h = (t - 1) * (n * (n + c) - sum((lt.R(j) for j in range(n)), mpfr(0)))
    dh = (h - n * (n + fam.beta + fam.gamma) - (2 * n + c) * lt.r_star(n)) / (t - 1)
    return h, dh


def H_pointwise(n: int, t, fam: Family, rule_size=None):
    """``(H_n, H_n')`` at ``t`` without numerical differentiation."""
    fam._require(n)
    with fam.ctx.local():
        return _h_pair(n, fam.solve(t, rule_size), fam)


def _sigma_terms(t, nu):
    def terms(Ht, Ht1, Ht2):
        prod = nu[0] * nu[1] * nu[2] * nu[3]
        rhs = (Ht1 + nu[0] ** 2) * (Ht1 + nu[1] ** 2) * (Ht1 + nu[2] ** 2) * (Ht1 + nu[3] ** 2)
        return [
            Ht1 * (t * (t - 1) * Ht2) ** 2,
            (2 * Ht1 * (t * Ht1 - Ht) - Ht1**2 - prod) ** 2,
            -rhs,
        ]

    return terms


def sigma_values(n: int, t, fam: Family):
    """``(H~_n, H~_n', H~_n'' estimate)`` at ``t``."""
    fam._require(n)
    ctx = fam.ctx
    with ctx.local():
        t = ctx.real(t)
        size = fam.rule_size(t)
        k = sigma_constants(n, fam.alpha, fam.beta, fam.gamma)
        h, dh = _h_pair(n, fam.solve(t, size), fam)
        second = fam.derivative(lambda lt: _h_pair(n, lt, fam)[1] + k.d1, t, 1, size)
        return h + k.d1 * t + k.d2, dh + k.d1, second


def sigma_residual(n: int, t, fam: Family) -> ResidualReport:
    """Residual of the Jimbo-Miwa-Okamoto sigma form for ``H~_n``."""
    ctx = fam.ctx
    with ctx.local():
        t = ctx.real(t)
        k = sigma_constants(n, fam.alpha, fam.beta, fam.gamma)
        Ht, Ht1, second = sigma_values(n, t, fam)
        return reports.from_derivatives(
            "sigma",
            n,
            t,
            _sigma_terms(t, k.nu),
            {"Ht": Ht, "Ht1": Ht1, "Ht2": second.value},
            {"Ht2": second.error_estimate},
            ctx,
        )


def W_value(n: int, lt: LadderTable, fam: Family):
    """``W_n = (t-1) R_n / (2n+alpha+beta+gamma+1) + 1``."""
    with fam.ctx.local():
        t = lt.params.t
        return (t - 1) * lt.R(n) / (2 * n + fam.c + 1) + 1


def pvi_terms(t, mu, ctx: PrecisionContext):
    """Terms of ``W'' - RHS`` for PVI; raises at the poles ``W in {0, 1, t}``."""
    near = ctx.power_of_ten(-ctx.digits / 2)

    def terms(W, W1, W2):
        if min(abs(W), abs(W - 1), abs(W - t)) < near:
            raise DegeneratePointError("W_n coincides with a pole of the PVI right-hand side")
        return [
            W2,
            -(1 / W + 1 / (W - 1) + 1 / (W - t)) * W1**2 / 2,
            (1 / t + 1 / (t - 1) + 1 / (W - t)) * W1,
            -W * (W - 1) * (W - t) / (t**2 * (t - 1) ** 2)
            * (mu[0] + mu[1] * t / W**2 + mu[2] * (t - 1) / (W - 1) ** 2 + mu[3] * t * (t - 1) / (W - t) ** 2),
        ]

    return terms


def pvi_residual(n: int, t, fam: Family) -> ResidualReport:
    """Residual of Painleve VI for ``W_n``; degenerate points are reported as skipped."""
    fam._require(n)
    ctx = fam.ctx
    with ctx.local():
        t = ctx.real(t)
        size = fam.rule_size(t)
        mu = pvi_constants(n, fam.alpha, fam.beta, fam.gamma).mu
        W = W_value(n, fam.solve(t, size), fam)
        first = fam.derivative(lambda lt: W_value(n, lt, fam), t, 1, size)
        second = fam.derivative(lambda lt: W_value(n, lt, fam), t, 2, size)
        try:
            return reports.from_derivatives(
                "pvi",
                n,
                t,
                pvi_terms(t, mu, ctx),
                {"W": W, "W1": first.value, "W2": second.value},
                {"W1": first.error_estimate, "W2": second.error_estimate},
                ctx,
            )
        except DegeneratePointError as exc:
            return reports.placeholder("pvi", n, t, SKIPPED, str(exc), ctx)


def toda_residual(n: int, t, fam: Family):
    """Residuals of the Toda-type equations for ``alpha_n`` (T1) and ``beta_n`` (T2)."""
    if not 0 <= n < fam.n_max:
        raise DomainError(f"T1 at n = {n} needs r_(n+1); family n_max is {fam.n_max}")
    ctx = fam.ctx
    with ctx.local():
        t = ctx.real(t)
        size = fam.rule_size(t)
        lt = fam.solve(t, size)
        da = fam.derivative(lambda s: s.table.alpha_rec[n], t, 1, size)
        out = [
            reports.from_derivatives(
                "T1",
                n,
                t,
                lambda d: [t * d, -lt.table.alpha_rec[n], -lt.r(n), lt.r(n + 1)],
                {"d": da.value},
                {"d": da.error_estimate},
                ctx,
            )
        ]
        if n == 0:
            out.append(reports.placeholder("T2", n, t, NOT_APPLICABLE, "beta_0 is not defined", ctx))
        else:
            db = fam.derivative(lambda s: s.table.beta_rec[n], t, 1, size)
            out.append(
                reports.from_derivatives(
                    "T2",
                    n,
                    t,
                    lambda d: [t * d, -(2 + lt.R(n - 1) - lt.R(n)) * lt.table.beta_rec[n]],
                    {"d": db.value},
                    {"d": db.error_estimate},
                    ctx,
                )
            )
        return out


def l_helper(n, r, r_star, t, alpha, beta, gamma):
    return (
        2 * (1 - t) * r**2
        + ((2 * n - beta + gamma) * t + 2 * beta + 2 * t * r_star) * r
        - (2 * n + alpha + gamma) * t * r_star
        - n * (n + gamma) * t
    )


def k_helper(n, r, r_star, t, alpha, beta, gamma):
    return (
        (t * r_star - (t - 1) * r) ** 2
        - (t - 1) * (2 * n * t + gamma * t + beta) * r
        + t * ((t - 1) * (2 * n + gamma) - alpha) * r_star
        + n * (n + gamma) * (t**2 - t)
    )


def _log_dn(n, lt):
    return sum((gmpy2.log(h) for h in lt.table.h[:n]), mpfr(0))


def aux_identity_residuals(n: int, t, fam: Family):
    """Residuals of the representation identities for ``r_n, r*_n, R_n`` and the ``t``-derivative relations."""
    fam._require(n)
    ctx = fam.ctx
    a, b, g = fam.alpha, fam.beta, fam.gamma
    out = []
    with ctx.local():
        t = ctx.real(t)
        size = fam.rule_size(t)
        lt = fam.solve(t, size)
        c = fam.c
        r, rs, R, Rs = lt.r(n), lt.r_star(n), lt.R(n), lt.R_star(n)
        h_n = lt.table.h[n]
        H, dH_formula = _h_pair(n, lt, fam)
        dH = fam.derivative(lambda s: _h_pair(n, s, fam)[0], t, 1, size)
        dr = fam.derivative(lambda s: s.r(n), t, 1, size)
        drs = fam.derivative(lambda s: s.r_star(n), t, 1, size)
        dp1 = fam.derivative(lambda s: s.table.p1[n], t, 1, size)
        dlnh = fam.derivative(lambda s: gmpy2.log(s.table.h[n]), t, 1, size)
        dh = fam.derivative(lambda s: s.table.h[n], t, 1, size)
        dlnd = fam.derivative(lambda s: _log_dn(n, s), t, 1, size)

        def fd(identity, term_fn, values, errors):
            out.append(reports.from_derivatives(identity, n, t, term_fn, values, errors, ctx))

        if 2 * n + c != 0:
            fd("r*-hn", lambda d: [rs, (n * (n + b + g) + (t - 1) * d - H) / (2 * n + c)],
               {"d": dH.value}, {"d": dH.error_estimate})
            fd("r-hn", lambda d: [r, -(n * (n + a + g) - t * d + H) / (2 * n + c)],
               {"d": dH.value}, {"d": dH.error_estimate})
        else:
            for identity in ("r*-hn", "r-hn"):
                out.append(reports.placeholder(identity, n, t, NOT_APPLICABLE, "2n+alpha+beta+gamma = 0", ctx))
        out.append(reports.from_terms(
            "hn-r-r*", n, t,
            [H, -(n * (2 * n + a + b + 2 * g) - (2 * n + c) * (r - rs)) * (t - 1), -(2 * n + c) * rs, -n * (n + b + g)],
            ctx,
        ))
        fd("hn-r*", lambda d: [(t - 1) * d, -H, n * (n + b + g), (2 * n + c) * rs],
           {"d": dH.value}, {"d": dH.error_estimate})
        fd("hn-derivative", lambda d: [d, -dH_formula], {"d": dH.value}, {"d": dH.error_estimate})
        fd("dn-R*", lambda d: [t * (t - 1) * d, -H], {"d": dlnd.value}, {"d": dlnd.error_estimate})

        ell = l_helper(n, r, rs, t, a, b, g)
        kay = k_helper(n, r, rs, t, a, b, g)
        c1 = 2 * n + 1 + c
        if n == 0:
            for identity in ("R-r-r*3", "R-r-r*4"):
                out.append(reports.placeholder(identity, n, t, NOT_APPLICABLE, "0/0 at n = 0 (r_0 = r*_0 = 0)", ctx))
        else:
            fd("R-r-r*3", lambda d: [R, -c1 * (ell - t * (1 - t) * d) / (2 * kay)],
               {"d": dr.value}, {"d": dr.error_estimate})
            fd("R-r-r*4", lambda d: [1 / R, -(ell + t * (1 - t) * d) / (2 * c1 * (b + r) * r)],
               {"d": dr.value}, {"d": dr.error_estimate})
        fd("r-r*", lambda d: [t**2 * (t - 1) ** 2 * d**2, -(ell**2), 4 * kay * (b + r) * r],
           {"d": dr.value}, {"d": dr.error_estimate})
        fd("r&r-diff", lambda d, ds: [t * ds, -(t - 1) * d],
           {"d": dr.value, "ds": drs.value}, {"d": dr.error_estimate, "ds": drs.error_estimate})
        fd("p1n-diff", lambda d: [d, -(r - rs - n)], {"d": dp1.value}, {"d": dp1.error_estimate})
        fd("tlnh'", lambda d: [t * d, -c1, R], {"d": dlnh.value}, {"d": dlnh.error_estimate})
        fd("h'", lambda d: [d, -h_n * (Rs - R)], {"d": dh.value}, {"d": dh.error_estimate})
    return out


def special_case_residuals(p: WeightParams, n_max: int):
    """Checks for the degenerate exponents ``gamma = 0`` and ``gamma = 1``.

    ``gamma = 0``: ``D_n`` is independent of ``t``, ``H_n`` vanishes and
    ``d1 t + d2`` solves the sigma form.  ``gamma = 1``: ``D_n`` satisfies the
    hypergeometric (Jacobi) ODE in ``t`` and ``u = d/dt ln D_n`` the
    associated Riccati equation.
    """
    ctx = p.ctx
    fam = Family.from_params(p, n_max)
    out = []
    with ctx.local():
        t = p.t
        if p.gamma == 0:
            t_set = (t / 2, t, 2 * t)
            for n in range(1, n_max + 1):
                dets = [norms_product(n, fam.solve(s).table) for s in t_set]
                spread = max(dets) - min(dets)
                out.append(ResidualReport(
                    "gamma0-Dn-constant", n, t, spread, spread / dets[1], mpfr(0), reports.identity_tolerance(ctx, n),
                ))
                for s in t_set:
                    out.append(reports.from_terms("gamma0-Hn-zero", n, s, [H_pointwise(n, s, fam)[0]], ctx))
                out.append(sigma_residual(n, t, fam))
        elif p.gamma == 1:
            a, b = p.alpha, p.beta
            size = fam.rule_size(t)
            for n in range(1, n_max + 1):
                D = norms_product(n, fam.solve(t, size).table)
                d1 = fam.derivative(lambda s: norms_product(n, s.table), t, 1, size)
                d2 = fam.derivative(lambda s: norms_product(n, s.table), t, 2, size)
                out.append(reports.from_derivatives(
                    "gamma1-ode", n, t,
                    lambda D1, D2: [t * (1 - t) * D2, -((2 + a + b) * t - a - 1) * D1, n * (n + a + b + 1) * D],
                    {"D1": d1.value, "D2": d2.value},
                    {"D1": d1.error_estimate, "D2": d2.error_estimate},
                    ctx,
                ))
                u = fam.derivative(lambda s: _log_dn(n, s), t, 1, size)
                du = fam.derivative(lambda s: _log_dn(n, s), t, 2, size)
                out.append(reports.from_derivatives(
                    "gamma1-riccati", n, t,
                    lambda u, du: [t * (1 - t) * du, -t * (t - 1) * u**2, -((2 + a + b) * t - a - 1) * u, n * (n + a + b + 1)],
                    {"u": u.value, "du": du.value},
                    {"u": u.error_estimate, "du": du.error_estimate},
                    ctx,
                ))
        else:
            raise DomainError("special-case checks exist only for gamma = 0 and gamma = 1")
    return out


def asymptotic_check_R0(p: WeightParams, t_values=ASYMPTOTIC_T) -> ResidualReport:
    """``R_0(t) = alpha + beta + 1 + O(1/t)`` as ``t -> -infinity``.

    With ``dev = |R_0(t) - (alpha+beta+1)|`` the deviations must decrease
    and ``|t| dev`` must change by at most a factor of two between
    successive points.  The normalized residual is the largest
    ``|log2|`` of those ratios (tolerance 1).  When every deviation is at
    working-precision noise (``gamma = 0``) the check passes trivially.
    """
    ctx = p.ctx
    with ctx.local():
        limit = p.alpha + p.beta + 1
        ts = [ctx.real(v) for v in t_values]
        devs = [abs(solve(p.with_t(s), 0).R(0) - limit) for s in ts]
        floor = reports.noise_floor(ctx) * limit
        if all(d <= floor for d in devs):
            return ResidualReport("R0-asy", 0, ts[-1], max(devs), mpfr(0), mpfr(0), mpfr(1),
                                  note="R_0 equals alpha+beta+1 to working precision")
        scaled = [abs(s) * d for s, d in zip(ts, devs)]
        decreasing = all(devs[i + 1] < devs[i] for i in range(len(devs) - 1))
        worst = max(abs(gmpy2.log2(scaled[i] / scaled[i + 1])) for i in range(len(ts) - 1))
        if not decreasing:
            worst = mpfr("inf")
        note = f"|t| * dev at t = {ctx.format(ts[-1], 8)}: {ctx.format(scaled[-1], 12)}"
        return ResidualReport("R0-asy", 0, ts[-1], devs[-1], worst, mpfr(0), mpfr(1), note=note)
