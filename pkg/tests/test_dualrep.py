import pytest

from qweyl.dualrep import (DualRepSpec, classical_limit_check, pole_free_check, verify_operator_form,
                           verify_rescaled_operator_form, verify_form_conjugates, verify_rescaled_F,
                           verify_weight_covariance)


def passed(checks):
    return all(c["status"] == "pass" for c in checks)


@pytest.mark.parametrize("lam", [None, 0, 2])
def test_operator_form_scalar_n1(lam):
    spec = DualRepSpec(1, lam=lam, d=4)
    assert passed([verify_operator_form(spec)])
    assert passed(verify_form_conjugates(spec))
    assert passed([verify_rescaled_operator_form(spec), verify_rescaled_F(spec)])


@pytest.mark.parametrize("weights", [(0, 0), (1, 0), (0, 1)])
def test_operator_form_n2_low_degree(weights):
    spec = DualRepSpec(2, "J", weights[0], weights[1], None, 2)
    assert passed([verify_operator_form(spec)])


@pytest.mark.parametrize("form", ["J", "K", "L"])
def test_weight_covariance(form):
    assert passed([verify_weight_covariance(DualRepSpec(1, form, d=3))])


@pytest.mark.parametrize("lam", [0, 2, 3])
def test_classical_limit_n1(lam):
    assert passed([pole_free_check(1, lam, 4), classical_limit_check(1, lam, 4)])


def test_spec_validation():
    with pytest.raises(ValueError):
        DualRepSpec(1, "Q")
    with pytest.raises(ValueError):
        DualRepSpec(1, d=-1)
