import pytest
from hypothesis import given, settings, strategies as st

from qweyl.membership import (NotSeparated, derive_case, eliminate, grading_obstruction, h_closure,
                              kweyl_generators, l_theorem_check, rr_k_h11_check, span_membership,
                              u_degree_bound)
from qweyl.qcoeff import qpow
from qweyl.weylq import WeylElement, grade_op, lower_op, raise_op

N = 2
SINGLE_H = [tuple(1 if k == p else 0 for k in range(N * N)) for p in range(N * N)]


def passed(checks):
    return all(c["status"] == "pass" for c in checks)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 2), st.integers(1, 2), st.integers(0, 1), st.integers(-1, 1)),
                min_size=1, max_size=4, unique=True))
def test_eliminate_keeps_one_summand(parts):
    x = WeylElement.zero(N)
    for k, (i, j, m, h) in enumerate(parts):
        x = x + WeylElement.node_monomial(N, i, j, m, 1 - m, h, qpow(k + 1))
    try:
        y, trace = eliminate(x, SINGLE_H)
    except NotSeparated:
        return
    assert len(y.terms) == 1
    assert trace.verify()
    (key,) = y.terms
    top = max(x.terms)
    assert [(m, d) for (m, d, _) in key] == [(m, d) for (m, d, _) in top]
    assert y.terms[key] == x.terms[top]


def test_eliminate_fails_without_separator():
    x = raise_op(N, 1, 1) + raise_op(N, 1, 1) * grade_op(N, 2, 2)
    with pytest.raises(NotSeparated):
        eliminate(x, [SINGLE_H[1]])


def test_trace_json_is_plain():
    x = raise_op(N, 1, 1) + lower_op(N, 2, 2)
    _, trace = eliminate(x, SINGLE_H)
    out = trace.to_json()
    assert out["steps"] and isinstance(out["result"], str)


@pytest.mark.parametrize("case", ["RL", "RR"])
@pytest.mark.parametrize("form", ["J", "K", "L"])
def test_derivations_n2(case, form):
    rep = derive_case(case, form, 2)
    assert passed(rep["checks"])


def test_derive_rejects_large_n():
    with pytest.raises(ValueError):
        derive_case("RL", "J", 4)


def test_l_theorem_n2():
    assert passed(l_theorem_check(2))


def test_h11_obstruction_n2():
    assert passed(rr_k_h11_check(2))


def test_u_degree_is_subadditive_on_generators():
    ok, _ = grading_obstruction(kweyl_generators(1))
    assert ok
    gens = kweyl_generators(2)
    items = [x for _, x in gens]
    for x in items[:4]:
        for y in items[:4]:
            assert u_degree_bound(x * y, 0) <= u_degree_bound(x, 0) + u_degree_bound(y, 0)


def test_h_closure_certificates_replay():
    gens = kweyl_generators(2)
    closure = h_closure(gens)
    assert closure
    assert all(cert.verify(gens) for cert in closure.values())


def test_span_membership_finds_product():
    gens = kweyl_generators(2)
    name, x = sorted(gens.elements.items())[0]
    ok, combo = span_membership(x * x.scale(qpow(3)), gens, 2)
    assert ok and combo
