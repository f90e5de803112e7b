"""Verification suites over an ``n <= n_max`` by ``t``-grid product.

Each suite is a function ``(ctx-bound family, t, n_max) -> [ResidualReport]``.
``run_point`` evaluates the selected suites and the data tables at a single
``t`` and returns plain strings, so points can be farmed out to worker
processes and reassembled in a fixed order.
"""

from __future__ import annotations

from gmpy2 import mpfr

from . import reports
from .ladder import check_a_decay, check_compatibility, check_positivity, check_sum_rules
from .moments import WeightParams, hankel_det, moment_table
from .orthopoly import build_recurrence, norms_product, zeros_in_unit_interval
from .painleve import (
    Family,
    H_pointwise,
    W_value,
    asymptotic_check_R0,
    aux_identity_residuals,
    pvi_residual,
    sigma_constants,
    sigma_residual,
    special_case_residuals,
    toda_residual,
)
from .precision import PrecisionContext

SUITES = ("recurrence", "hankel", "ladder", "compat", "sumrules", "sigma", "pvi", "toda", "aux", "special", "asymptotic")
COMPAT_Z = ("-0.7", "0.37", "2.5")
TABLE_COLUMNS = ("alpha", "beta", "h", "D", "R", "R_star", "r", "r_star", "H", "H_tilde", "W")


def _relative_agreement(identity, n, t, a, b, ctx):
    with ctx.local():
        raw = abs(a - b)
        scale = max(abs(b), mpfr(1)) if identity.endswith("alpha") else abs(b)
        return reports.ResidualReport(identity, n, t, raw, raw / scale, mpfr(0), reports.identity_tolerance(ctx, n))


def suite_recurrence(fam, t, n_max):
    ctx = fam.ctx
    p = fam.params(t)
    stieltjes = fam.solve(t).table
    chol = build_recurrence(p, n_max, "cholesky")
    out = []
    for n in range(n_max + 1):
        out.append(_relative_agreement("recurrence-alpha", n, p.t, stieltjes.alpha_rec[n], chol.alpha_rec[n], ctx))
        out.append(_relative_agreement("recurrence-h", n, p.t, stieltjes.h[n], chol.h[n], ctx))
        if n > 0:
            out.append(_relative_agreement("recurrence-beta", n, p.t, stieltjes.beta_rec[n], chol.beta_rec[n], ctx))
            inside = zeros_in_unit_interval(n, stieltjes)
            out.append(reports.ResidualReport(
                "zeros-in-(0,1)", n, p.t, mpfr(0 if inside else 1), mpfr(0 if inside else 1), mpfr(0), mpfr(0),
            ))
    return out


def suite_hankel(fam, t, n_max):
    ctx = fam.ctx
    p = fam.params(t)
    table = fam.solve(t).table
    out = []
    closed = moment_table(p, 2 * n_max, "closed_form").mu
    quad = moment_table(p, 2 * n_max, "quadrature").mu
    for k, (a, b) in enumerate(zip(quad, closed)):
        out.append(_relative_agreement("moments", k, p.t, a, b, ctx))
    for n in range(1, n_max + 2):
        out.append(_relative_agreement("hankel-det", n, p.t, norms_product(n, table), hankel_det(n, p), ctx))
    return out


def suite_ladder(fam, t, n_max):
    lt = fam.solve(t)
    out = [check_a_decay(n, lt) for n in range(n_max + 1)]
    ok = check_positivity(lt)
    out.append(reports.ResidualReport("R-positive", 0, lt.params.t, mpfr(0 if ok else 1), mpfr(0 if ok else 1),
                                      mpfr(0), mpfr(0), note="" if ok else "some R_n or R*_n is not positive"))
    return out


def suite_compat(fam, t, n_max):
    lt = fam.solve(t)
    out = []
    for n in range(n_max + 1):
        for z in COMPAT_Z:
            out.extend(check_compatibility(n, fam.ctx.real(z), lt))
    return out


def suite_sumrules(fam, t, n_max):
    lt = fam.solve(t)
    return [r for n in range(n_max + 1) for r in check_sum_rules(n, lt)]


def suite_sigma(fam, t, n_max):
    return [sigma_residual(n, t, fam) for n in range(n_max + 1)]


def suite_pvi(fam, t, n_max):
    return [pvi_residual(n, t, fam) for n in range(n_max + 1)]


def suite_toda(fam, t, n_max):
    return [r for n in range(n_max + 1) for r in toda_residual(n, t, fam)]


def suite_aux(fam, t, n_max):
    return [r for n in range(n_max + 1) for r in aux_identity_residuals(n, t, fam)]


def suite_special(fam, t, n_max):
    return special_case_residuals(fam.params(t), n_max)


POINT_SUITES = {
    "recurrence": suite_recurrence,
    "hankel": suite_hankel,
    "ladder": suite_ladder,
    "compat": suite_compat,
    "sumrules": suite_sumrules,
    "sigma": suite_sigma,
    "pvi": suite_pvi,
    "toda": suite_toda,
    "aux": suite_aux,
    "special": suite_special,
}


def point_tables(fam, t, n_max):
    """Moments and the per-``n`` sequences at one ``t``, as decimal strings."""
    ctx = fam.ctx
    lt = fam.solve(t)
    tab = lt.table
    with ctx.local():
        t = ctx.real(t)
        mu = moment_table(fam.params(t), 2 * n_max, "closed_form").mu
        rows = []
        for n in range(n_max + 1):
            H, _ = H_pointwise(n, t, fam)
            k = sigma_constants(n, fam.alpha, fam.beta, fam.gamma)
            values = (
                tab.alpha_rec[n],
                tab.beta_rec[n],
                tab.h[n],
                norms_product(n, tab),
                lt.R(n),
                lt.R_star(n),
                lt.r(n),
                lt.r_star(n),
                H,
                H + k.d1 * t + k.d2,
                W_value(n, lt, fam),
            )
            rows.append([n] + [ctx.format(v + 0) for v in values])  # + 0 drops negative zero
        return {
            "moments": [[k, ctx.format(v)] for k, v in enumerate(mu)],
            "sequences": rows,
        }


def make_family(alpha, beta, gamma, digits, n_max, t_values):
    """Validate every ``(alpha, beta, gamma, t)`` and build the family.

    Ladder data is carried to ``n_max + 1`` so that identities at ``n``
    that involve ``n + 1`` are available for every ``n <= n_max``.
    """
    ctx = PrecisionContext(digits)
    for t in t_values:
        WeightParams(alpha, beta, gamma, t, ctx)
    return Family(alpha, beta, gamma, ctx, n_max + 1)


def run_point(alpha, beta, gamma, digits, n_max, t, suites, with_tables=True):
    """Selected suites and tables at one ``t``.

    Returns ``(tables, rows)`` where ``rows`` are ``(suite, record)``
    pairs with decimal-string records ready for serialization.
    """
    fam = make_family(alpha, beta, gamma, digits, n_max, [t])
    ctx = fam.ctx
    rows = []
    for name in suites:
        if name == "asymptotic":
            continue
        if name == "special" and fam.gamma not in (0, 1):
            continue
        for r in POINT_SUITES[name](fam, t, n_max):
            rows.append((name, r.to_dict(ctx)))
    tables = point_tables(fam, t, n_max) if with_tables else None
    return tables, rows


def run_asymptotic(alpha, beta, gamma, digits):
    ctx = PrecisionContext(digits)
    p = WeightParams(alpha, beta, gamma, "-1", ctx)
    return [("asymptotic", asymptotic_check_R0(p).to_dict(ctx))]
