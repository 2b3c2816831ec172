from hypothesis import given, settings, strategies as st

from qweyl.linalg import SparseEchelon, rank, solve_combination
from qweyl.opmatrix import OperatorMatrix
from qweyl.qcoeff import ONE, ZERO, qpow

coeffs = st.integers(-2, 2).map(lambda k: qpow(k)) | st.just(ZERO) | st.integers(-3, 3).map(lambda k: ONE * k)
vecs = st.dictionaries(st.integers(0, 4), coeffs, max_size=4).map(lambda d: {k: v for k, v in d.items() if v})


@settings(max_examples=50, deadline=None)
@given(st.lists(vecs, min_size=1, max_size=4), st.lists(coeffs, min_size=4, max_size=4))
def test_solve_recovers_combination(cands, xs):
    target = {}
    for v, x in zip(cands, xs):
        for k, c in v.items():
            target[k] = target.get(k, ZERO) + x * c
    target = {k: v for k, v in target.items() if v}
    sol = solve_combination(cands, target)
    assert sol is not None
    got = {}
    for idx, x in sol.items():
        for k, c in cands[idx].items():
            got[k] = got.get(k, ZERO) + x * c
    assert {k: v for k, v in got.items() if v} == target


def test_rank_and_reduce():
    rows = [{0: ONE, 1: ONE}, {1: ONE}, {0: ONE, 1: ONE * 2}]
    assert rank(rows) == 2
    e = SparseEchelon()
    for r in rows:
        e.insert(r)
    assert e.reduce({0: ONE * 5}) == {}
    assert solve_combination(rows[:2], {2: ONE}) is None


def test_operator_matrix_algebra():
    src = ((0,), (1,))
    A = OperatorMatrix(src, src, {(0,): {(1,): ONE}})
    I = OperatorMatrix.identity(src)
    assert A @ I == A
    assert (A @ A).is_zero()
    assert A.transpose_plain().entry((0,), (1,)) == ONE
    assert (A - A).is_zero()
