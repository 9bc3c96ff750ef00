from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hankel3.series import (
    CompositionDomainError,
    NonInvertibleError,
    OrderMismatchError,
    TruncatedSeries,
    add,
    compose,
    exact,
    exp_series,
    mul,
    negate_argument,
    reciprocal,
    sqrt1p,
)

N = 5


def s(*coeffs, order=None):
    return exact(coeffs, len(coeffs) - 1 if order is None else order)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def series_st(order=N, const=None):
    body = st.lists(rationals, min_size=order, max_size=order)
    head = rationals if const is None else st.just(F(const))
    return st.builds(lambda c0, rest: exact([c0, *rest], order), head, body)


no_const = series_st(const=0)


class TestAdd:
    def test_cancellation(self):
        assert add(s(1, 1), s(1, -1)) == s(2, 0)

    def test_zero_identity(self):
        a = s(3, F(1, 2), -2)
        assert add(a, TruncatedSeries.zero(2)) == a

    def test_odd_parts_cancel(self):
        assert add(s(0, 1, 1), s(0, 1, -1)) == s(0, 2, 0)

    def test_order_mismatch(self):
        with pytest.raises(OrderMismatchError):
            add(s(1, 1), s(1, 1, 1))


class TestMul:
    def test_difference_of_squares(self):
        assert mul(s(1, 1, order=2), s(1, -1, order=2)) == s(1, 0, -1)

    def test_truncation(self):
        z = TruncatedSeries.variable(1)
        assert mul(z, z) == TruncatedSeries.zero(1)

    def test_square_of_trinomial(self):
        assert mul(s(1, 1, 1), s(1, 1, 1)) == s(1, 2, 3)

    def test_order_mismatch(self):
        with pytest.raises(OrderMismatchError):
            mul(s(1, 1), s(1, 1, 1))

    def test_exact_rationals_stay_exact(self):
        out = mul(s(F(1, 3), 1), s(3, F(1, 2)))
        assert all(isinstance(c, F) for c in out.coeffs)


class TestReciprocal:
    def test_geometric(self):
        assert reciprocal(s(1, -1, order=3)) == s(1, 1, 1, 1)

    def test_one(self):
        assert reciprocal(s(1)) == s(1)

    def test_alternating(self):
        assert reciprocal(s(1, 2, order=2)) == s(1, -2, 4)

    def test_zero_constant_rejected(self):
        with pytest.raises(NonInvertibleError):
            reciprocal(s(0, 1))


class TestCompose:
    def test_exp_of_zero(self):
        e = exp_series(TruncatedSeries.variable(N))
        assert compose(e, TruncatedSeries.zero(N)) == TruncatedSeries.constant(1, N)

    def test_identity_outer(self):
        w = s(0, F(1, 2), -1, 3, 0, 2)
        assert compose(TruncatedSeries.variable(N), w) == w

    def test_geometric_in_z_squared(self):
        outer = reciprocal(s(1, -1, order=4))
        assert compose(outer, s(0, 0, 1, order=4)) == s(1, 0, 1, 0, 1)

    def test_inner_constant_rejected(self):
        with pytest.raises(CompositionDomainError):
            compose(s(1, 1), s(1, 1))


class TestSqrtExp:
    def test_sqrt_of_zero(self):
        assert sqrt1p(TruncatedSeries.zero(N)) == TruncatedSeries.constant(1, N)

    def test_sqrt_binomial(self):
        assert sqrt1p(s(0, 0, 1, 0, 0)) == s(1, 0, F(1, 2), 0, F(-1, 8))

    def test_sqrt_needs_zero_constant(self):
        with pytest.raises(CompositionDomainError):
            sqrt1p(s(1, 1))

    def test_exp_of_zero(self):
        assert exp_series(TruncatedSeries.zero(3)) == s(1, 0, 0, 0)

    def test_exp_taylor(self):
        assert exp_series(s(0, 1, 0, 0)) == s(1, 1, F(1, 2), F(1, 6))

    def test_exp_needs_zero_constant(self):
        with pytest.raises(CompositionDomainError):
            exp_series(s(2, 1))


class TestNegateArgument:
    def test_flip(self):
        assert negate_argument(s(0, 1, 1)) == s(0, -1, 1)

    def test_odd_part(self):
        a = s(2, 3, 5, 7)
        assert a - negate_argument(a) == s(0, 6, 0, 14)


@settings(max_examples=60, deadline=None)
@given(series_st(), series_st(), series_st())
def test_ring_axioms(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) + c == a + (b + c)


@settings(max_examples=60, deadline=None)
@given(series_st())
def test_negate_argument_involution(a):
    assert negate_argument(negate_argument(a)) == a


@settings(max_examples=60, deadline=None)
@given(series_st().filter(lambda a: a[0] != 0))
def test_reciprocal_round_trip(a):
    assert a * reciprocal(a) == TruncatedSeries.constant(1, N)


@settings(max_examples=60, deadline=None)
@given(no_const)
def test_sqrt_round_trip(a):
    r = sqrt1p(a)
    assert r[0] == 1
    assert r * r == a + 1


@settings(max_examples=60, deadline=None)
@given(no_const)
def test_exp_group_law(a):
    assert exp_series(a) * exp_series(-a) == TruncatedSeries.constant(1, N)


@settings(max_examples=40, deadline=None)
@given(no_const, no_const)
def test_exp_of_sum(a, b):
    assert exp_series(a + b) == exp_series(a) * exp_series(b)


@settings(max_examples=40, deadline=None)
@given(series_st(), no_const, no_const)
def test_compose_associative(f, g, h):
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


def test_complex_coefficients():
    a = TruncatedSeries.from_coeffs([1, 0.5j, -0.25], 2)
    r = a * reciprocal(a)
    assert abs(r[0] - 1) < 1e-15 and abs(r[1]) < 1e-15 and abs(r[2]) < 1e-15
