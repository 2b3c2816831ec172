import pytest
from hypothesis import given, settings, strategies as st

from qweyl.qcoeff import ONE, gamma, qint, qpow
from qweyl.suites import weyl_commute_task, weyl_node_task
from qweyl.weylq import (WeylElement, act_on_vector, derivative_flavor, grade_op, lower_op,
                         raise_op, square_dressing, square_dressing_closed, window_basis)

N = 2
monos = st.builds(lambda i, j, m, d, h, c: WeylElement.node_monomial(N, i, j, m, d, h, qpow(c)),
                  st.integers(1, N), st.integers(1, N), st.integers(0, 2), st.integers(0, 2),
                  st.integers(-2, 2), st.integers(-2, 2))
elems = st.lists(monos, min_size=1, max_size=3).map(lambda xs: sum(xs[1:], xs[0]))


@settings(max_examples=40, deadline=None)
@given(elems, elems, elems)
def test_associative(x, y, z):
    assert (x * y) * z == x * (y * z)


@settings(max_examples=25, deadline=None)
@given(elems, elems)
def test_product_matches_composed_action(x, y):
    for e in window_basis(N, 0, 2):
        lhs = act_on_vector(x * y, {e: ONE})
        rhs = act_on_vector(x, act_on_vector(y, {e: ONE}))
        assert lhs == rhs


def test_single_node_relations():
    M, D, H = raise_op(1, 1, 1), lower_op(1, 1, 1), grade_op(1, 1, 1)
    assert D * M - (M * D).scale(qpow(1)) == grade_op(1, 1, 1, -1)
    assert H * M == (M * H).scale(qpow(1))
    assert M * D == (H - grade_op(1, 1, 1, -1)).scale(gamma.inverse())


def test_action_on_monomials():
    e = (3,)
    assert act_on_vector(raise_op(1, 1, 1), {e: ONE}) == {(4,): ONE}
    assert act_on_vector(lower_op(1, 1, 1), {e: ONE}) == {(2,): qint(3)}
    assert act_on_vector(grade_op(1, 1, 1), {e: ONE}) == {e: qpow(3)}
    assert act_on_vector(lower_op(1, 1, 1), {(0,): ONE}) == {}


@pytest.mark.parametrize("form,flavor", [("J", "J"), ("K", "K"), ("L", "L")])
def test_flavored_derivative_gives_flavored_integer(form, flavor):
    x = derivative_flavor(1, 1, 1, form)
    for a in range(1, 5):
        assert act_on_vector(x, {(a,): ONE}) == {(a - 1,): qint(a, flavor)}


@pytest.mark.parametrize("node", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_node_relations_n2(node):
    checks = weyl_node_task(2, 3, *node)
    assert all(c["status"] == "pass" for c in checks)


def test_nodes_commute():
    assert all(c["status"] == "pass" for c in weyl_commute_task(2, 2))


def test_zero_and_one():
    x = raise_op(2, 1, 2)
    assert x * WeylElement.one(2) == x
    assert (x - x).is_zero()
    assert x * WeylElement.zero(2) == WeylElement.zero(2)


@pytest.mark.parametrize("node", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_square_dressing_closed_form_n2(node):
    assert square_dressing(2, *node) == square_dressing_closed(2, *node)


@pytest.mark.xfail(strict=True, reason="closed form drops the lower-row contribution at n=3, i=1")
def test_square_dressing_closed_form_n3():
    nodes = [(i, j) for i in range(1, 4) for j in range(1, 4)]
    assert all(square_dressing(3, i, j) == square_dressing_closed(3, i, j) for i, j in nodes)
