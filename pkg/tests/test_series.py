import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerseidel import series as ps
from eulerseidel.errors import (
    BadConstantTerm,
    NonzeroInnerConstant,
    NotInvertible,
    ParseError,
    ZeroConstantTerm,
)
from eulerseidel.series import Series

N = 8

fractions = st.fractions(min_value=-6, max_value=6, max_denominator=6)


def series_st(order=N, const=None):
    coeffs = st.lists(fractions, min_size=order + 1, max_size=order + 1)
    if const is None:
        return coeffs.map(Series)
    return coeffs.map(lambda cs: Series([const] + cs[1:]))


unit_series = series_st().filter(lambda s: s[0] != 0)


def geom(order=N):
    return ps.geometric(order)


# examples ----------------------------------------------------------------------


def test_add_examples():
    assert ps.add(Series([1, 1]), Series([1, -1])) == Series([2, 0])
    a = Series([3, F(1, 2), -1])
    assert ps.add(Series([0, 0, 0]), a) == a
    assert ps.add(Series([1, 1, 1]), Series([0, 1, 2])).coeffs == (1, 2, 3)


def test_add_truncates_to_smaller_order():
    s = ps.add(Series([1, 2, 3, 4]), Series([1, 1]))
    assert s.order == 1 and s.coeffs == (2, 3)


def test_mul_examples():
    assert ps.mul(Series([1, -1], N), geom()) == ps.constant(1, N)
    t = ps.variable(4)
    assert ps.mul(t, t).coeffs == (0, 0, 1, 0, 0)
    assert ps.mul(Series([1, 1], 4), Series([1, 1], 4)).coeffs == (1, 2, 1, 0, 0)


def test_reciprocal_examples():
    assert ps.reciprocal(Series([1, -1], N)) == geom()
    assert ps.reciprocal(Series([2])).coeffs == (F(1, 2),)
    assert ps.reciprocal(Series([1, 1], N)).coeffs == tuple((-1) ** i for i in range(N + 1))


def test_reciprocal_rejects_zero_constant():
    with pytest.raises(ZeroConstantTerm):
        ps.reciprocal(Series([0, 1, 1]))


def test_compose_examples():
    # 1/(1-t) o t/(1-t) = (1-t)/(1-2t); long division gives 1, 1, 2, 4, 8
    g = geom(4)
    assert ps.compose(g, g.shift(1)).coeffs == (1, 1, 2, 4, 8)
    a = Series([1, 2, F(1, 3), -4, 5])
    assert ps.compose(a, ps.variable(4)) == a
    assert ps.compose(ps.exponential(3), Series([0, -1], 3)).coeffs == (1, -1, F(1, 2), F(-1, 6))


def test_compose_rejects_nonzero_inner_constant():
    with pytest.raises(NonzeroInnerConstant):
        ps.compose(geom(), Series([1, 1], N))


def test_comp_inverse_examples():
    g = geom()
    assert ps.comp_inverse(g.shift(1)) == Series([0] + [(-1) ** (i - 1) for i in range(1, N + 1)])
    assert ps.comp_inverse(ps.variable(N)) == ps.variable(N)
    f = 1 - ps.exponential(N, -1)
    inv = ps.comp_inverse(f)
    assert inv == Series([0] + [F(1, i) for i in range(1, N + 1)])
    assert ps.compose(f, inv) == ps.variable(N)
    assert ps.compose(inv, f) == ps.variable(N)


@pytest.mark.parametrize("bad", [Series([1, 1, 0]), Series([0, 0, 1]), Series([0])])
def test_comp_inverse_rejects(bad):
    with pytest.raises(NotInvertible):
        ps.comp_inverse(bad)


def test_exp_log_examples():
    assert ps.exp_series(ps.variable(N)).coeffs == tuple(F(1, math.factorial(i)) for i in range(N + 1))
    assert ps.log_series(Series([1, 1], N)).coeffs == (0,) + tuple(F((-1) ** (i + 1), i) for i in range(1, N + 1))
    assert ps.exp_series(ps.log_series(Series([1, 2], N))) == Series([1, 2], N)


def test_exp_log_reject_bad_constant():
    with pytest.raises(BadConstantTerm):
        ps.exp_series(Series([1, 1]))
    with pytest.raises(BadConstantTerm):
        ps.log_series(Series([2, 1]))


def test_ogf_egf_examples():
    assert ps.ogf_to_egf(geom()) == ps.exponential(N)
    assert ps.egf_to_ogf(ps.exponential(N)) == geom()


def test_parse_series_literals_and_builtins():
    assert ps.parse_series("1,1,1/2,1/6", 5).coeffs == (1, 1, F(1, 2), F(1, 6), 0, 0)
    assert ps.parse_series("1,2,3,4", 1).coeffs == (1, 2)
    assert ps.parse_series("exp", 3) == ps.exponential(3)
    assert ps.parse_series("geom", 3).coeffs == (1, 1, 1, 1)
    assert ps.parse_series("one", 2).coeffs == (1, 0, 0)
    assert ps.parse_series("t", 2).coeffs == (0, 1, 0)
    assert ps.parse_series(" -3/6 ", 0).coeffs == (F(-1, 2),)


@pytest.mark.parametrize("text", ["", "1,,2", "1/0", "a", "1.5"])
def test_parse_series_errors(text):
    with pytest.raises(ParseError):
        ps.parse_series(text, 3)


def test_format_series_round_trip():
    s = Series([1, F(-1, 2), 0, F(7, 3)])
    assert ps.parse_series(ps.format_series(s), 3) == s
    assert ps.format_series(s) == "1,-1/2,0,7/3"


def test_floats_are_refused():
    with pytest.raises(TypeError):
        Series([0.5])


# properties --------------------------------------------------------------------


@given(series_st(), series_st(), series_st())
@settings(max_examples=40, deadline=None)
def test_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(unit_series)
@settings(max_examples=40, deadline=None)
def test_reciprocal_property(a):
    assert ps.mul(a, ps.reciprocal(a)) == ps.constant(1, N)


@given(series_st(), series_st(const=0), series_st(const=0))
@settings(max_examples=25, deadline=None)
def test_compose_associative(a, f, g):
    assert ps.compose(ps.compose(a, f), g) == ps.compose(a, ps.compose(f, g))


@given(series_st(const=0).filter(lambda s: s[1] != 0))
@settings(max_examples=25, deadline=None)
def test_comp_inverse_both_sides(f):
    inv = ps.comp_inverse(f)
    t = ps.variable(N)
    assert ps.compose(f, inv) == t
    assert ps.compose(inv, f) == t


@given(series_st(const=0))
@settings(max_examples=30, deadline=None)
def test_log_exp_round_trip(a):
    assert ps.log_series(ps.exp_series(a)) == a


@given(series_st())
@settings(max_examples=30, deadline=None)
def test_ogf_egf_round_trip(a):
    assert ps.ogf_to_egf(ps.egf_to_ogf(a)) == a
    assert ps.egf_to_ogf(ps.ogf_to_egf(a)) == a


@given(series_st(), st.integers(0, 4))
@settings(max_examples=30, deadline=None)
def test_power_matches_repeated_mul(a, e):
    expected = ps.constant(1, N)
    for _ in range(e):
        expected = expected * a
    assert a**e == expected


def test_exponential_of_scaled_variable_is_scaled_exponential():
    assert ps.exp_series(ps.variable(N) * F(-3, 2)) == ps.exponential(N, F(-3, 2))
