from fractions import Fraction

import gmpy2
import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacobi_pvi import DomainError, PrecisionContext, beta_fn, hyp2f1, log_gamma
from jacobi_pvi.precision import _series, is_nonpositive_integer

from conftest import rel_err


def test_digits_below_30_rejected():
    with pytest.raises(DomainError):
        PrecisionContext(20)


def test_bits_cover_working_digits():
    ctx = PrecisionContext(50)
    assert ctx.working_digits == 65
    assert ctx.bits >= 65 * 3.3219


def test_decimal_strings_parsed_without_doubles():
    ctx = PrecisionContext(50)
    with ctx.local():
        tenth = ctx.real("0.1")
        assert abs(tenth * 10 - 1) < ctx.power_of_ten(-60)
        assert abs(ctx.real(0.1) * 10 - 1) > ctx.power_of_ten(-20)


def test_fraction_conversion_exact_to_working_precision():
    ctx = PrecisionContext(40)
    assert rel_err(ctx.real(Fraction(1, 3)) * 3, 1, ctx) < ctx.power_of_ten(-50)


def test_format_significant_digits():
    ctx = PrecisionContext(30)
    assert ctx.format(ctx.real(Fraction(2, 3)), 5) == "0.66667"


def test_nonpositive_integer_detection():
    assert is_nonpositive_integer(gmpy2.mpfr(-3))
    assert is_nonpositive_integer(gmpy2.mpfr(0))
    assert not is_nonpositive_integer(gmpy2.mpfr(-2.5))
    assert not is_nonpositive_integer(gmpy2.mpfr(1))


def test_log_gamma_integer_values():
    ctx = PrecisionContext(50)
    with ctx.local():
        assert rel_err(gmpy2.exp(log_gamma(10, ctx)), 362880, ctx) < ctx.power_of_ten(-55)


def test_log_gamma_rejects_nonpositive():
    with pytest.raises(DomainError):
        log_gamma(0, PrecisionContext(30))


def test_beta_rational_values():
    ctx = PrecisionContext(50)
    assert rel_err(beta_fn(3, 2, ctx), Fraction(1, 12), ctx) < ctx.power_of_ten(-55)
    assert rel_err(beta_fn(2, 2, ctx), Fraction(1, 6), ctx) < ctx.power_of_ten(-55)


def test_hyp2f1_terminating_value():
    ctx = PrecisionContext(50)
    assert rel_err(hyp2f1(2, -1, 4, -1, ctx), Fraction(3, 2), ctx) < ctx.power_of_ten(-55)


def test_hyp2f1_log2():
    ctx = PrecisionContext(50)
    with ctx.local():
        assert rel_err(hyp2f1(1, 1, 2, -1, ctx), gmpy2.log(2), ctx) < ctx.power_of_ten(-55)


def test_hyp2f1_at_zero_is_one():
    assert hyp2f1("0.3", "1.7", "2.2", 0, PrecisionContext(30)) == 1


@pytest.mark.parametrize("z", ["1", "1.5"])
def test_hyp2f1_rejects_z_at_or_above_one(z):
    with pytest.raises(DomainError):
        hyp2f1(1, 1, 2, z, PrecisionContext(30))


def test_hyp2f1_rejects_nonpositive_integer_c():
    with pytest.raises(DomainError):
        hyp2f1(1, 1, -2, "0.3", PrecisionContext(30))


@settings(max_examples=40, deadline=None)
@given(
    a=st.fractions(min_value=-3, max_value=4, max_denominator=8),
    b=st.fractions(min_value=Fraction(1, 2), max_value=6, max_denominator=8),
    c=st.fractions(min_value=Fraction(1, 2), max_value=8, max_denominator=8),
    z=st.fractions(min_value=-9, max_value=Fraction(1, 2), max_denominator=16),
)
def test_hyp2f1_matches_mpmath(a, b, c, z):
    ctx = PrecisionContext(40)
    mpmath.mp.dps = 70
    ref = mpmath.hyp2f1(*(mpmath.mpf(v.numerator) / v.denominator for v in (a, b, c, z)))
    value = hyp2f1(a, b, c, z, ctx)
    with ctx.local():
        err = abs(value - gmpy2.mpfr(mpmath.nstr(ref, 70)))
        assert err <= ctx.power_of_ten(-40) * max(1, abs(value))


def test_log_gamma_special_values():
    ctx = PrecisionContext(50)
    with ctx.local():
        assert abs(log_gamma(1, ctx)) < ctx.power_of_ten(-60)
        half = gmpy2.log(gmpy2.sqrt(gmpy2.const_pi()))
        assert rel_err(log_gamma("0.5", ctx), half, ctx) < ctx.power_of_ten(-55)
        assert rel_err(log_gamma(5, ctx), gmpy2.log(gmpy2.mpfr(24)), ctx) < ctx.power_of_ten(-55)


def test_beta_one_one():
    ctx = PrecisionContext(40)
    assert rel_err(beta_fn(1, 1, ctx), 1, ctx) < ctx.power_of_ten(-45)
    with pytest.raises(DomainError):
        beta_fn(0, 1, ctx)


@settings(max_examples=25, deadline=None)
@given(
    a=st.fractions(-2, 3, max_denominator=6),
    b=st.fractions(Fraction(1, 3), 5, max_denominator=6),
    c=st.fractions(Fraction(1, 2), 7, max_denominator=6),
    z=st.fractions(Fraction(-99, 100), Fraction(-51, 100), max_denominator=100),
)
def test_pfaff_branch_matches_direct_series(a, b, c, z):
    ctx = PrecisionContext(40)
    with ctx.local():
        direct = _series(*(ctx.real(v) for v in (a, b, c, z)), ctx.eps())
    value = hyp2f1(a, b, c, z, ctx)
    assert abs(value - direct) <= ctx.power_of_ten(-(ctx.digits - 5)) * max(1, abs(direct))


@settings(max_examples=25, deadline=None)
@given(
    a=st.fractions(-2, 3, max_denominator=6),
    b=st.fractions(Fraction(1, 3), 5, max_denominator=6),
    c=st.fractions(Fraction(1, 2), 7, max_denominator=6),
    z=st.fractions(-10, Fraction(1, 2), max_denominator=20),
)
def test_gauss_contiguous_relation(a, b, c, z):
    # (c - a) F(a-1) + (2a - c + (b - a) z) F(a) + a (z - 1) F(a+1) = 0
    ctx = PrecisionContext(40)
    f_minus, f0, f_plus = (hyp2f1(a + d, b, c, z, ctx) for d in (-1, 0, 1))
    with ctx.local():
        terms = [(c - a) * f_minus, (2 * a - c + (b - a) * z) * f0, a * (z - 1) * f_plus]
        total = abs(sum(ctx.real(1) * v for v in terms))
        assert total <= ctx.power_of_ten(-35) * max(abs(v) for v in terms)


@settings(max_examples=25, deadline=None)
@given(
    m=st.integers(0, 8),
    a=st.fractions(Fraction(1, 4), 5, max_denominator=8),
    c=st.fractions(Fraction(1, 2), 6, max_denominator=8),
    z=st.fractions(-12, Fraction(9, 10), max_denominator=10),
)
def test_terminating_series_equals_rational_sum(m, a, c, z):
    exact, term = Fraction(1), Fraction(1)
    for k in range(m):
        term = term * (a + k) * (-m + k) / ((c + k) * (k + 1)) * z
        exact += term
    ctx = PrecisionContext(40)
    value = hyp2f1(a, -m, c, z, ctx)
    with ctx.local():
        assert abs(value - ctx.real(exact)) <= ctx.power_of_ten(-(ctx.digits - 5)) * max(1, abs(ctx.real(exact)))
