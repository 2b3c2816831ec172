import pytest
from hypothesis import given, settings, strategies as st

from qweyl.pairing import PairingForm, fit_kappa, gram, pair, transpose, weyl_transpose
from qweyl.qcoeff import ONE, gamma, qfactorial
from qweyl.qmatrixalg import MINUS, PLUS, AlgElement
from qweyl.suites import pairing_a_task, pairing_task, raising_matrix
from qweyl.weylq import grade_op, lower_op, operator_matrix, raise_op, window_basis


def test_gram_is_flavored_factorial():
    e = (2, 0, 3, 1)
    for f in "JKL":
        assert gram(e, f) == qfactorial(2, f) * qfactorial(3, f)
    raw = gram(e, PairingForm("J", False))
    assert raw == gram(e, "J") * (-gamma.inverse()) ** 6


def test_pair_is_diagonal():
    z = AlgElement.generator(2, 1, 2, PLUS)
    w1, w2 = AlgElement.generator(2, 1, 2, MINUS), AlgElement.generator(2, 2, 1, MINUS)
    assert pair(z, w1, "J") == ONE
    assert pair(z, w2, "J").is_zero()


def test_bad_form():
    with pytest.raises(ValueError):
        PairingForm("X")


@pytest.mark.parametrize("form", ["J", "L", "K"])
def test_transposes_n2(form):
    checks = pairing_task(2, 4, form)
    assert all(c["status"] == "pass" for c in checks), checks


def test_forms_related_by_A():
    assert all(c["status"] == "pass" for c in pairing_a_task(2, 3))


@pytest.mark.parametrize("form", ["J", "L", "K"])
def test_transpose_is_involution(form):
    T = raising_matrix(2, 2, 1, 3)
    assert transpose(transpose(T, form), form) == T


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["J", "K", "L"]), st.integers(1, 2), st.integers(1, 2), st.integers(-1, 1))
def test_weyl_transpose_matches_matrix_transpose(form, i, j, h):
    x = raise_op(2, i, j) * grade_op(2, 1, 1, h) + lower_op(2, j, i)
    T = operator_matrix(x, 2, 0, 3)
    Tt = operator_matrix(weyl_transpose(x, form), 2, 0, 4)
    low = window_basis(2, 0, 2)
    # both sides are complete on sources of degree <= 2
    assert transpose(T, form).restrict(source=low) == Tt.restrict(source=low, target=T.source)

def test_fit_kappa_none_when_not_proportional():
    T = raising_matrix(2, 1, 1, 2)
    assert fit_kappa(T.scale(gamma), T) == gamma
    U = raising_matrix(2, 1, 2, 2)
    assert fit_kappa(T + U, T) is None
