import itertools
from fractions import Fraction

import pytest
from gmpy2 import mpfr

from jacobi_pvi import (
    DegeneratePointError,
    DomainError,
    Family,
    H_pointwise,
    WeightParams,
    asymptotic_check_R0,
    aux_identity_residuals,
    pvi_constants,
    pvi_residual,
    sigma_constants,
    sigma_residual,
    special_case_residuals,
    toda_residual,
)
from jacobi_pvi import painleve
from jacobi_pvi.painleve import W_value, _sigma_terms, pvi_terms, sigma_values
from jacobi_pvi.reports import CHECKED, NOT_APPLICABLE, SKIPPED

from conftest import rel_err
from rational_oracle import RationalWeight, exact_H, taylor_coefficients


@pytest.fixture(scope="module")
def unit_family():
    return Family(1, 1, 1, WeightParams.create(1, 1, 1, -1, digits=50).ctx, 4)


@pytest.fixture(scope="module")
def generic_family():
    return Family("1.5", "2", "0.5", WeightParams.create(1, 1, 1, -1, digits=50).ctx, 5)


def test_sigma_constants_unit():
    k = sigma_constants(1, Fraction(1), Fraction(1), Fraction(1))
    assert (k.d1, k.d2, k.nu) == (-5, Fraction(5, 2), (1, 0, 2, 3))


def test_pvi_constants_unit():
    assert pvi_constants(1, Fraction(1), Fraction(1), Fraction(1)).mu == (18, Fraction(-1, 2), Fraction(1, 2), 0)


def test_mu4_vanishes_for_gamma_minus_one():
    assert pvi_constants(2, Fraction(3), Fraction(1), Fraction(-1)).mu[3] == 0


def test_H_unit_values(unit_family):
    ctx = unit_family.ctx
    H, dH = H_pointwise(1, -1, unit_family)
    assert rel_err(H, Fraction(-4, 3), ctx) < ctx.power_of_ten(-45)
    assert rel_err(dH, Fraction(10, 9), ctx) < ctx.power_of_ten(-45)
    assert H_pointwise(0, -1, unit_family)[0] == 0


def test_H_tilde_unit_value(unit_family):
    Ht, Ht1, _ = sigma_values(1, -1, unit_family)
    assert rel_err(Ht, Fraction(37, 6), unit_family.ctx) < unit_family.ctx.power_of_ten(-45)
    assert rel_err(Ht1, Fraction(10, 9) - 5, unit_family.ctx) < unit_family.ctx.power_of_ten(-45)


@pytest.mark.parametrize("a,b,g,n,t", [(2, 3, 2, 3, Fraction(-1, 3)), (1, 2, 3, 2, Fraction(-5, 2)), (3, 1, 1, 4, Fraction(-7, 4))])
def test_H_matches_exact_derivative_of_log_determinant(a, b, g, n, t):
    ctx = WeightParams.create(a, b, g, t, digits=50).ctx
    fam = Family(a, b, g, ctx, n)
    H, dH = H_pointwise(n, t, fam)
    eH, edH, _ = exact_H(a, b, g, n, t)
    assert rel_err(H, eH, ctx) < ctx.power_of_ten(-45)
    assert rel_err(dH, edH, ctx) < ctx.power_of_ten(-45)


@pytest.mark.parametrize("a,b,g,n,t", [
    (1, 1, 1, 1, Fraction(-1)),
    (2, 3, 2, 3, Fraction(-1, 3)),
    (1, 2, 3, 2, Fraction(-5, 2)),
    (4, 1, 2, 4, Fraction(-2, 7)),
])
def test_sigma_form_holds_exactly_in_rationals(a, b, g, n, t):
    H, H1, H2 = exact_H(a, b, g, n, t)
    k = sigma_constants(n, Fraction(a), Fraction(b), Fraction(g))
    assert sum(_sigma_terms(t, k.nu)(H + k.d1 * t + k.d2, H1 + k.d1, H2)) == 0


def test_sigma_form_invariant_under_nu_permutations():
    a, b, g, n, t = 2, 3, 2, 2, Fraction(-3, 5)
    H, H1, H2 = exact_H(a, b, g, n, t)
    k = sigma_constants(n, Fraction(a), Fraction(b), Fraction(g))
    for nu in itertools.permutations(k.nu):
        assert sum(_sigma_terms(t, nu)(H + k.d1 * t + k.d2, H1 + k.d1, H2)) == 0


@pytest.mark.parametrize("t", ["-0.25", "-1", "-5"])
def test_sigma_residual_within_budget(generic_family, t):
    for n in range(5):
        r = sigma_residual(n, t, generic_family)
        assert r.status == CHECKED and r.passed, r
        assert r.normalized_residual < generic_family.ctx.power_of_ten(-25)


def test_sigma_residual_shrinks_with_precision():
    lo = Family("2", "1", "-0.5", WeightParams.create(1, 1, 1, -1, digits=50).ctx, 3)
    hi = Family("2", "1", "-0.5", WeightParams.create(1, 1, 1, -1, digits=80).ctx, 3)
    for n in (1, 3):
        r_lo = sigma_residual(n, "-0.5", lo).normalized_residual
        r_hi = sigma_residual(n, "-0.5", hi).normalized_residual
        assert r_hi < r_lo * mpfr("1e-20")


def test_W0_unit_value(unit_family):
    W = W_value(0, unit_family.solve(-1), unit_family)
    assert rel_err(W, Fraction(-2, 3), unit_family.ctx) < unit_family.ctx.power_of_ten(-45)


@pytest.mark.parametrize("t", ["-0.5", "-2"])
def test_pvi_residual_within_budget(generic_family, t):
    for n in range(5):
        r = pvi_residual(n, t, generic_family)
        assert r.status == CHECKED and r.passed, r
        assert r.normalized_residual < mpfr("1e-20")


def test_pvi_degenerate_point_is_skipped(monkeypatch, unit_family):
    monkeypatch.setattr(painleve, "W_value", lambda n, lt, fam: mpfr(1) + 0 * lt.params.t)
    r = pvi_residual(1, "-1", unit_family)
    assert r.status == SKIPPED and r.passed and "pole" in r.note


def test_pvi_terms_reject_poles(ctx50):
    terms = pvi_terms(ctx50.real(-1), (1, 1, 1, 1), ctx50)
    with pytest.raises(DegeneratePointError):
        terms(W=ctx50.real(0), W1=1, W2=1)
    with pytest.raises(DegeneratePointError):
        terms(W=ctx50.real(-1), W1=1, W2=1)


def test_toda_residuals(generic_family):
    for n in range(5):
        t1, t2 = toda_residual(n, "-0.5", generic_family)
        assert t1.passed and t2.passed
        if n == 0:
            assert t2.status == NOT_APPLICABLE
    with pytest.raises(DomainError):
        toda_residual(5, "-0.5", generic_family)


def test_toda_gamma_zero_at_noise_level():
    fam = Family("1.5", "2", "0", WeightParams.create(1, 1, 1, -1, digits=50).ctx, 3)
    for r in toda_residual(1, "-1", fam):
        assert r.passed and r.normalized_residual < fam.ctx.power_of_ten(-40)


@pytest.mark.parametrize("t", ["-0.25", "-2"])
def test_auxiliary_identities(generic_family, t):
    reports = [r for n in range(5) for r in aux_identity_residuals(n, t, generic_family)]
    assert all(r.passed for r in reports), [r for r in reports if not r.passed]
    ids = {r.identity_id for r in reports}
    assert {"r*-hn", "r-hn", "hn-r-r*", "hn-r*", "R-r-r*3", "R-r-r*4", "r-r*", "r&r-diff", "p1n-diff", "tlnh'", "dn-R*"} <= ids


def test_auxiliary_n0_not_applicable(unit_family):
    reports = {r.identity_id: r for r in aux_identity_residuals(0, "-1", unit_family)}
    assert reports["R-r-r*3"].status == NOT_APPLICABLE
    assert reports["hn-r-r*"].raw_residual == 0


def test_special_gamma_zero():
    p = WeightParams.create("1.5", "2", 0, "-1", digits=50)
    reports = special_case_residuals(p, 3)
    assert all(r.passed for r in reports)
    assert {r.identity_id for r in reports} == {"gamma0-Dn-constant", "gamma0-Hn-zero", "sigma"}
    for r in reports:
        if r.identity_id == "gamma0-Dn-constant":
            assert r.normalized_residual <= mpfr("1e-40")


def test_special_gamma_one():
    p = WeightParams.create("1.5", "2", 1, "-0.5", digits=50)
    reports = special_case_residuals(p, 4)
    assert len(reports) == 8 and all(r.passed for r in reports)


@pytest.mark.parametrize("a,b,n,t", [(1, 1, 1, Fraction(-1)), (2, 3, 3, Fraction(-1, 2)), (1, 4, 2, Fraction(-3))])
def test_gamma_one_ode_exact(a, b, n, t):
    c = taylor_coefficients(lambda s: RationalWeight(a, b, 1, s).hankel_det(n), t, max(n, 2))
    D, D1, D2 = c[0], c[1], 2 * c[2]
    assert t * (1 - t) * D2 - ((2 + a + b) * t - a - 1) * D1 + n * (n + a + b + 1) * D == 0


def test_unit_d1_is_linear_in_t():
    for t in (Fraction(-1), Fraction(-3, 7)):
        assert RationalWeight(1, 1, 1, t).hankel_det(1) == Fraction(1, 12) - t / 6


def test_special_rejects_other_gamma():
    with pytest.raises(DomainError):
        special_case_residuals(WeightParams.create(1, 1, "0.5", -1, digits=40), 2)


@pytest.mark.parametrize("abg", [("1", "1", "1"), ("2", "1", "0.5"), ("1.5", "2", "0")])
def test_asymptotic_R0(abg):
    r = asymptotic_check_R0(WeightParams.create(*abg, -1, digits=40))
    assert r.passed, r


def test_family_index_checks(unit_family):
    with pytest.raises(DomainError):
        H_pointwise(5, -1, unit_family)
    with pytest.raises(DomainError):
        sigma_residual(1, "-1e-12", unit_family)
