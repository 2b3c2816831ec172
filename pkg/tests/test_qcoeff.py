from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qweyl.qcoeff import (ONE, ZERO, PoleError, QIntFlavor, QRat, eval_at, gamma, lambda_bracket,
                          qfactorial, qint, qpow, qt_monomial, specialize, t, tpow)

laurent = st.builds(lambda c, a, b: qt_monomial(c, a, b),
                    st.integers(-3, 3), st.integers(-3, 3), st.integers(-2, 2))
qrats = st.builds(lambda xs, ys: sum(xs, ZERO) / (sum(ys, ZERO) if not sum(ys, ZERO).is_zero() else ONE),
                  st.lists(laurent, max_size=3), st.lists(laurent, min_size=1, max_size=2))


@settings(max_examples=60, deadline=None)
@given(qrats, qrats, qrats)
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    if not a.is_zero():
        assert a * a.inverse() == ONE


@settings(max_examples=40, deadline=None)
@given(qrats, qrats)
def test_canonical_form_is_unique(a, b):
    if a == b:
        assert a.to_string() == b.to_string()
        assert hash(a) == hash(b)
    x = (a * b + a) / (b + ONE) if not (b + ONE).is_zero() else a
    assert QRat(x).to_string() == x.to_string()


def test_negative_powers_are_cleared():
    assert qpow(-2) * qpow(2) == ONE
    assert (qpow(-1) + ONE).to_string() == "(q + 1)/(q)"


@pytest.mark.parametrize("a", range(0, 8))
def test_flavors_are_shifted_brackets(a):
    L = qint(a, QIntFlavor.BRACKET_L)
    assert qint(a, "J") == qpow(a - 1) * L if a else qint(a, "J") == ZERO
    assert qint(a, "K") == qpow(1 - a) * L if a else qint(a, "K") == ZERO
    assert L * gamma == qpow(a) - qpow(-a)
    for f in "JKL":
        assert eval_at(qint(a, f), 1) == a


def test_factorial():
    assert qfactorial(0) == ONE
    assert qfactorial(3, "J") == qint(1, "J") * qint(2, "J") * qint(3, "J")
    assert eval_at(qfactorial(4, "K"), 1) == 24


@pytest.mark.parametrize("lam", [0, 1, 2, 5, -1, -3])
def test_lambda_bracket_specializes_to_qint(lam):
    for shift in (0, 1, -2):
        val = specialize(lambda_bracket(shift), lam)
        k = lam + shift
        want = qint(k) if k >= 0 else -qint(-k)
        assert val == want


def test_eval_and_poles():
    assert eval_at(gamma, 2) == Fraction(3, 2)
    assert eval_at(t * qpow(2), 2, 3) == 32
    with pytest.raises(PoleError):
        eval_at(ONE / gamma, 1)
    with pytest.raises(PoleError):
        eval_at(ONE / (tpow(1) - qpow(2)), 1, 2)
    # removable after specialization
    assert eval_at((tpow(1) - ONE) / (qpow(1) - ONE), 1, 3) == 3


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO
