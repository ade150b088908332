from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricgw.coefrings import (
    NovikovSeries,
    QCoefficient,
    XiSeries,
    lambda_expand,
    required_root_order,
    series_exp_log,
)

W = QCoefficient.w_power(1)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
laurent = st.dictionaries(st.integers(-4, 4), rationals, min_size=1, max_size=4)


@st.composite
def qcoefs(draw, nonzero=False):
    num = draw(laurent)
    den = draw(laurent.filter(lambda d: any(d.values())))
    M = draw(st.sampled_from([1, 2, 3]))
    c = QCoefficient.from_laurent(num, den, M)
    if nonzero and c.is_zero():
        c = QCoefficient.one(M)
    return c


def test_basic_values():
    assert QCoefficient.one() == 1
    assert QCoefficient.zero().is_zero()
    assert QCoefficient.q_power(1) == W**2
    assert QCoefficient.q_power(Fraction(1, 4)).root_order == 2
    assert QCoefficient.q_power(Fraction(1, 2)) == W


def test_required_root_order():
    assert required_root_order(Fraction(1, 2)) == 1
    assert required_root_order(Fraction(3)) == 1
    assert required_root_order(Fraction(1, 4)) == 2
    assert required_root_order(Fraction(1, 6)) == 3


def test_normal_form_is_unique():
    a = (W**2 - 1) / (W - 1)
    assert a == W + 1
    assert a.to_text() == (W + 1).to_text()


def test_rescale_preserves_value_and_hash():
    a = 1 / (W - 1 / W)
    b = a.rescale(3)
    assert a == b
    assert hash(a) == hash(b)
    assert b.canonical().root_order == 1


def test_mixed_root_orders_add():
    x = QCoefficient.q_power(Fraction(1, 4)) + QCoefficient.q_power(Fraction(1, 6))
    assert x.root_order == 6


@given(qcoefs(), qcoefs(), qcoefs())
@settings(max_examples=60, deadline=None)
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(qcoefs(nonzero=True))
@settings(max_examples=60, deadline=None)
def test_inverse(a):
    assert a * a.inverse() == 1
    assert (a**3) / a == a * a


@given(qcoefs())
@settings(max_examples=60, deadline=None)
def test_text_and_json_round_trip(a):
    M = a.root_order
    assert QCoefficient.from_text(a.to_text(), M) == a
    assert QCoefficient.from_json(a.to_json(), M) == a


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QCoefficient.zero().inverse()
    with pytest.raises(ZeroDivisionError):
        W / 0


# -- series -------------------------------------------------------------

def test_series_multiplication_truncates():
    t = NovikovSeries.monomial(("t",), 3, (1,))
    one = NovikovSeries.one(("t",), 3)
    geo = one
    for _ in range(5):
        geo = one + t * geo
    assert [geo.coefficient((j,)) for j in range(5)] == [1, 1, 1, 1, 0]


def test_weighted_grading_allows_negative_exponents():
    s = NovikovSeries(("a", "b"), 3, {((1, -1), 0): 1}, weights=(3, 1))
    assert s.degree_of((1, -1)) == 2
    with pytest.raises(ValueError):
        NovikovSeries(("a", "b"), 3, {((0, -1), 0): 1}, weights=(3, 1))


def test_exp_log_errors():
    one = NovikovSeries.one(("t",), 2)
    with pytest.raises(ValueError):
        one.exp()
    with pytest.raises(ValueError):
        (one + one).log()
    with pytest.raises(ValueError):
        series_exp_log(one, "sideways")


def test_log_of_one_is_zero():
    assert NovikovSeries.one(("t",), 4).log().is_zero()


@given(st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), rationals, max_size=6))
@settings(max_examples=50, deadline=None)
def test_exp_log_inverse(coeffs):
    terms = {(e, 0): c for e, c in coeffs.items() if any(e)}
    f = NovikovSeries(("x", "y"), 4, terms)
    assert f.exp().log() == f
    z = NovikovSeries.one(("x", "y"), 4) + f
    assert z.log().exp() == z


def test_substitute_signs():
    s = NovikovSeries(("a", "b"), 3, {((1, 0), 0): 1, ((1, 1), 0): 5, ((2, 0), 0): 7})
    r = s.substitute_signs((-1, 1))
    assert r.coefficient((1, 0)) == -1
    assert r.coefficient((1, 1)) == -5
    assert r.coefficient((2, 0)) == 7


# -- xi expansion ---------------------------------------------------------

def test_lambda_expand_examples():
    ex = lambda_expand(1 / (W - 1 / W) ** 2, 2)
    assert ex.coefficients == {-2: 1, 0: Fraction(-1, 12), 2: Fraction(1, 240)}
    ex = lambda_expand(W**2, 2)
    assert ex.coefficients == {0: 1, 1: 1, 2: Fraction(1, 2)}
    assert lambda_expand(0, 3).valuation() is None


def test_lambda_expand_fractional_root():
    # q^{1/4} = exp(xi/4)
    ex = lambda_expand(QCoefficient.q_power(Fraction(1, 4)), 2)
    assert ex.coefficients == {0: 1, 1: Fraction(1, 4), 2: Fraction(1, 32)}


def test_xi_series_access():
    s = XiSeries(2, {-1: 1, 1: Fraction(1, 3), 5: 9})
    assert s[1] == Fraction(1, 3)
    assert s[0] == 0
    with pytest.raises(KeyError):
        s[3]
