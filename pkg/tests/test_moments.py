from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacobi_pvi import DomainError, PrecisionLossError, WeightParams, hankel_det, moment, moment_table, weight_eval
from jacobi_pvi.moments import cholesky

from conftest import PARAM_SETS, rel_err
from rational_oracle import RationalWeight


@pytest.mark.parametrize("k,exact", [(0, Fraction(1, 4)), (1, Fraction(2, 15)), (2, Fraction(1, 12))])
def test_unit_moments_rational(unit_params, k, exact):
    ctx = unit_params.ctx
    for method in ("closed_form", "quadrature"):
        assert rel_err(moment(k, unit_params, method), exact, ctx) < ctx.power_of_ten(-45)


def test_unit_hankel_determinants(unit_params):
    ctx = unit_params.ctx
    assert hankel_det(0, unit_params) == 1
    assert rel_err(hankel_det(1, unit_params), Fraction(1, 4), ctx) < ctx.power_of_ten(-45)
    assert rel_err(hankel_det(2, unit_params), Fraction(11, 3600), ctx) < ctx.power_of_ten(-45)


@pytest.mark.parametrize("a,b,g,t", [(1, 1, 1, Fraction(-1, 4)), (2, 3, 2, Fraction(-5)), (1, 2, 0, Fraction(-2)), (3, 1, 3, Fraction(-1, 2))])
def test_moments_and_determinants_match_rational_oracle(a, b, g, t):
    p = WeightParams.create(a, b, g, t, digits=50)
    oracle = RationalWeight(a, b, g, t)
    for k in range(9):
        assert rel_err(moment(k, p), oracle.moment(k), p.ctx) < p.ctx.power_of_ten(-45)
    for n in range(1, 5):
        assert rel_err(hankel_det(n, p), oracle.hankel_det(n), p.ctx) < p.ctx.power_of_ten(-40)


@pytest.mark.parametrize("abg", PARAM_SETS)
@pytest.mark.parametrize("t", ["-0.5", "-2"])
def test_closed_form_matches_quadrature(abg, t):
    p = WeightParams.create(*abg, t, digits=50)
    closed = moment_table(p, 8, "closed_form").mu
    quad = moment_table(p, 8, "quadrature").mu
    assert all(rel_err(q, c, p.ctx) < p.ctx.power_of_ten(-45) for q, c in zip(quad, closed))


@settings(max_examples=12, deadline=None)
@given(
    alpha=st.fractions(Fraction(1, 4), 4, max_denominator=4),
    beta=st.fractions(Fraction(1, 4), 4, max_denominator=4),
    gamma=st.fractions(-2, 3, max_denominator=4),
    t=st.fractions(-8, Fraction(-1, 8), max_denominator=8),
    k=st.integers(0, 10),
)
def test_closed_form_matches_quadrature_property(alpha, beta, gamma, t, k):
    p = WeightParams.create(alpha, beta, gamma, t, digits=35)
    assert rel_err(moment(k, p, "quadrature"), moment(k, p), p.ctx) < p.ctx.power_of_ten(-33)


def test_moments_decrease_and_stay_positive():
    p = WeightParams.create("1.5", "2", "0.5", "-1", digits=40)
    mu = moment_table(p, 10).mu
    assert all(m > 0 for m in mu)
    assert all(b < a for a, b in zip(mu, mu[1:]))


@pytest.mark.parametrize("args,message", [
    ((0, 1, 1, -1), "alpha must be positive"),
    ((1, "-0.5", 1, -1), "beta must be positive"),
    ((1, 1, 1, "0.5"), "t must be negative"),
    ((1, 1, 1, 0), "t must be negative"),
])
def test_parameter_validation(args, message):
    with pytest.raises(DomainError, match=message):
        WeightParams.create(*args)


def test_weight_eval(unit_params):
    ctx = unit_params.ctx
    assert weight_eval(0, unit_params) == 0
    assert weight_eval(1, unit_params) == 0
    assert rel_err(weight_eval("0.5", unit_params), Fraction(3, 8), ctx) < ctx.power_of_ten(-45)
    with pytest.raises(DomainError):
        weight_eval("1.5", unit_params)


def test_moment_index_validated(unit_params):
    with pytest.raises(DomainError):
        moment(-1, unit_params)
    with pytest.raises(DomainError):
        moment(0, unit_params, "simpson")


def test_cholesky_reports_failing_pivot(ctx50):
    with pytest.raises(PrecisionLossError) as info:
        cholesky([[ctx50.real(1), ctx50.real(2)], [ctx50.real(2), ctx50.real(1)]], ctx50)
    assert info.value.n == 1 and info.value.quantity == "hankel pivot"


def test_high_order_hankel_needs_more_digits():
    # The Hankel matrix condition number grows roughly like 10**(1.5 n).
    p = WeightParams.create(1, 1, 1, -1, digits=30, guard_digits=0)
    with pytest.raises(PrecisionLossError):
        hankel_det(40, p)


def test_moment_table_hankel_matrix(unit_params):
    table = moment_table(unit_params, 4)
    h = table.hankel_matrix(3)
    assert h[1][2] is table.mu[3] and table.k_max == 4
