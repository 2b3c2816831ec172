import pytest

from qweyl.qmatrixalg import MINUS, PLUS
from qweyl.uqserre import (alphabet, certify_quadratic_relations, pbw_root_count, relation_instances,
                           serre_algebra, serre_relators)


def test_alphabet_and_relators():
    assert len(alphabet(2)) == 3
    # two ordered adjacent pairs each way give cubic relators; (1,3) commutes
    assert len(serre_relators(2)) == 5


def test_instance_count():
    kinds = [k for _, _, k, _ in relation_instances(2)]
    assert len(kinds) == 16
    assert kinds.count("cross") == 1


@pytest.mark.parametrize("side", [PLUS, MINUS])
def test_quadratic_relations_hold_n2(side):
    rep = certify_quadratic_relations(2, D=6, side=side)
    assert len(rep) == 16
    assert all(r["status"] == "pass" for r in rep), [r for r in rep if r["status"] != "pass"]


def test_low_depth_is_inconclusive_not_fail():
    rep = certify_quadratic_relations(2, D=3, side=PLUS)
    assert {r["status"] for r in rep} <= {"pass", "inconclusive"}
    assert any(r["status"] == "inconclusive" for r in rep)


@pytest.mark.parametrize("d", range(0, 5))
def test_quotient_matches_root_pbw_count(d):
    # free algebra modulo Serre = U(n+), whose graded dimension counts PBW monomials in root vectors
    alg = serre_algebra(2)
    assert alg.space(d).quotient_dimension() == pbw_root_count(2, d)
