import pytest

from qweyl.kaction import build_VLambda, verify_levi_formulas, verma_action
from qweyl.qcoeff import ONE, lambda_bracket, qint
from qweyl.suites import k_diagonal_task, tail_structure_task, pairing_identities_task, verma_sl2_task
from qweyl.uqserre import letter_beta


def passed(checks):
    return all(c["status"] == "pass" for c in checks)


def test_levi_formulas_n2():
    assert passed(verify_levi_formulas(2, 3))


@pytest.mark.parametrize("n", [1, 2])
def test_k_diagonals(n):
    assert passed(k_diagonal_task(n, 3))


def test_pairing_identities_n2():
    assert passed(pairing_identities_task(2, 3))


def test_tail_structure_n2():
    assert passed(tail_structure_task(2, 3))


def test_verma_sl2():
    assert passed(verma_sl2_task(kmax=4, lambdas=range(0, 5)))


def test_verma_kills_highest_weight():
    m = build_VLambda(1)
    v = ((0,), m.labels[0])
    assert verma_action(m, "E", letter_beta(1), {v: ONE}) == {}
    got = verma_action(m, "E", letter_beta(1), {((2,), m.labels[0]): ONE})
    assert got == {((1,), m.labels[0]): qint(2) * lambda_bracket(-1)}


def test_matrix_weight_needs_n2():
    with pytest.raises(ValueError):
        build_VLambda(3, 1, 0)
    assert len(build_VLambda(2, 1, 1).labels) == 4
