import pytest

from qweyl.multop import (Chirality, MultOperator, check_observations, fit_weyl_skeleton, flip_element,
                          mult_matrix, nw_partitions, se_partitions)
from qweyl.qmatrixalg import PLUS
from qweyl.weylq import operator_matrix

NODES3 = [(i, j) for j in range(1, 4) for i in range(1, 4)]


def test_partition_counts():
    assert nw_partitions(1, 3) == []
    assert len(nw_partitions(3, 3)) == 4 + 1
    assert len(se_partitions(3, 1, 1)) == 5


@pytest.mark.parametrize("chir", [Chirality.LEFT, Chirality.RIGHT])
@pytest.mark.parametrize("node", NODES3)
def test_fit_reproduces_multiplication_n3(chir, node):
    op = MultOperator(*node, chir, PLUS)
    fitted = fit_weyl_skeleton(op, 3, d_max=3, check_extra=1)
    assert check_observations(fitted, op, 3) == []
    got = operator_matrix(fitted, 3, 0, 3)
    want = mult_matrix(op, 3, 0, 3)
    assert got.restrict(target=want.target) == want


def test_leading_term_only_at_corner():
    fitted = fit_weyl_skeleton(MultOperator(1, 1), 2)
    assert len(fitted.terms) == 1


def test_flip_is_involution():
    fitted = fit_weyl_skeleton(MultOperator(2, 2), 2)
    assert flip_element(flip_element(fitted)) == fitted
