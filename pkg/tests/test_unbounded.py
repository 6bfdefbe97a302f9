import pytest

from squatcalc.core import calculus
from squatcalc.core.calculus import f_of_T_unbounded, relative_discrepancy, select_k
from squatcalc.core.errors import ContractError, NoRealResolventPoint, NotInResolventSet
from squatcalc.core.slice_functions import Exponential, IntrinsicRational
from squatcalc.core.spectrum import ResolventCertificate, in_resolvent_set
from squatcalc.fixtures import derivative, random as random_matrix, real_scalar

SHIFTED_INVERSE = IntrinsicRational((1.0,), (3.0, 1.0))
BOUNDED_RATIO = IntrinsicRational((1.0, 0.0, 1.0), (5.0, 2.0, 1.0))


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("f", [SHIFTED_INVERSE, BOUNDED_RATIO], ids=["shifted_inverse", "bounded_ratio"])
def test_transform_and_direct_routes_agree(seed, f):
    t = random_matrix(3, seed=seed, norm=1.0)
    result = f_of_T_unbounded(t, f)
    assert result.k > 0
    assert result.discrepancy <= 1e-6
    assert result.value is result.transform.value


@pytest.mark.parametrize("seed", range(3))
def test_result_does_not_depend_on_k(seed):
    t = random_matrix(3, seed=seed, norm=1.0)
    a = f_of_T_unbounded(t, SHIFTED_INVERSE, 3.0)
    b = f_of_T_unbounded(t, SHIFTED_INVERSE, -4.0)
    assert a.k == 3.0 and b.k == -4.0
    assert relative_discrepancy(a.value, b.value) <= 1e-6


def test_derivative_operator():
    t = derivative(16, 0.05)
    f = IntrinsicRational((0.0, 1.0), (-60.0, 1.0))
    auto = f_of_T_unbounded(t, f)
    fixed = f_of_T_unbounded(t, f, 45.0)
    assert auto.k > 0 and auto.k != 45.0
    assert auto.discrepancy <= 1e-6
    assert fixed.discrepancy <= 1e-6
    assert relative_discrepancy(auto.value, fixed.value) <= 1e-6


def test_selected_k_is_in_the_resolvent_set():
    for t in (random_matrix(4, seed=9, norm=2.5), real_scalar(3.0, 2), derivative(8, 0.1)):
        k = select_k(t)
        assert float(k).is_integer()
        assert in_resolvent_set(t, k)


def test_first_candidate_lies_past_the_norm():
    assert select_k(real_scalar(3.0, 2)) == 4.0
    assert select_k(real_scalar(-2.5, 2)) == 4.0


def test_no_real_resolvent_point(monkeypatch):
    monkeypatch.setattr(calculus, "in_resolvent_set", lambda *a, **kw: ResolventCertificate(False, 0.0, 1.0))
    with pytest.raises(NoRealResolventPoint) as info:
        select_k(random_matrix(2, seed=0), max_steps=3)
    assert info.value.exit_code == 5


def test_preconditions():
    t = random_matrix(2, seed=4)
    with pytest.raises(ContractError):
        f_of_T_unbounded(t, Exponential())
    with pytest.raises(NotInResolventSet):
        f_of_T_unbounded(real_scalar(2.0, 2), SHIFTED_INVERSE, 2.0)


def test_json_payload():
    data = f_of_T_unbounded(random_matrix(2, seed=1), SHIFTED_INVERSE).to_json()
    assert set(data) == {"k", "transform", "direct", "discrepancy"}
