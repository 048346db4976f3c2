import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symweb.qpoly import (
    ONE,
    ZERO,
    InexactDivisionError,
    LaurentHalf,
    parse_laurent,
    qbinom,
    qfact,
    qint,
    qint_factors,
)

polys = st.dictionaries(st.integers(-12, 12), st.integers(-5, 5), max_size=5).map(LaurentHalf)


def test_frozen_products():
    # (q + q^-1)(q^-1 + q^-5), expanded by hand
    assert qint(2) * parse_laurent("q^-1 + q^-5") == parse_laurent("1 + q^-2 + q^-4 + q^-6")
    assert qfact(3) == parse_laurent("q^3 + 2*q + 2*q^-1 + q^-3")
    assert qbinom(4, 2) == parse_laurent("q^4 + q^2 + 2 + q^-2 + q^-4")


def test_edge_values():
    assert qint(0) == ZERO
    assert qint(1) == ONE
    assert qfact(0) == ONE
    assert qbinom(5, 0) == ONE and qbinom(5, 5) == ONE
    assert qbinom(2, 3) == ZERO


def test_text_format():
    assert str(qint(2)) == "q + q^-1"
    assert str(-qint(2)) == "-q - q^-1"
    assert str(LaurentHalf.monomial(3, 2)) == "2*q^{3/2}"
    assert str(ZERO) == "0"
    assert str(LaurentHalf.monomial(-1)) == "q^{-1/2}"


def test_exact_division():
    assert (qint(6)).exact_div(qint(3)) == parse_laurent("q^3 + q^-3")
    with pytest.raises(InexactDivisionError):
        ONE.exact_div(qint(2))
    with pytest.raises(ZeroDivisionError):
        ONE.exact_div(ZERO)


def test_qint_factors():
    assert qint_factors(qfact(4)) == (0, [4, 3, 2])
    assert qint_factors(qint(2) + 1) is None


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(polys, polys)
def test_division_round_trip(a, b):
    if b.is_zero():
        return
    assert (a * b).exact_div(b) == a
    quo, rem = a.divmod(b)
    assert quo * b + rem == a


@given(polys)
def test_text_and_json_round_trip(a):
    assert parse_laurent(str(a)) == a
    assert LaurentHalf.from_json(a.to_json()) == a


@given(polys, polys)
def test_bar_is_ring_involution(a, b):
    assert a.bar().bar() == a
    assert (a * b).bar() == a.bar() * b.bar()


def test_qint_recurrence():
    for a in range(1, 21):
        assert qint(a) * qint(2) == qint(a + 1) + qint(a - 1)


def test_binomial_times_factorial():
    for a in range(11):
        for b in range(a + 1):
            num = ONE
            for i in range(b):
                num = num * qint(a - i)
            assert qbinom(a, b) * qfact(b) == num


def test_small_values():
    assert qint(3) == parse_laurent("q^2 + 1 + q^-2")
    assert qfact(2) == qint(2)
    assert qbinom(2, 1) == qint(2)
    assert (qint(2) * qint(2)) == parse_laurent("q^2 + 2 + q^-2")
    assert LaurentHalf.monomial(3).bar() == LaurentHalf.monomial(-3)
    with pytest.raises(ValueError):
        qint(-1)
    with pytest.raises(ValueError):
        qfact(-1)


@given(st.integers(1, 15))
def test_qint_symmetric_and_integral(n):
    assert qint(n).bar() == qint(n)
    assert qint(n).evaluate(1.0) == n
