import pytest

from squatcalc.core.errors import DomainError
from squatcalc.core.identities import lemma_identities_residual, transform_identity_residual
from squatcalc.core.quaternion import Quaternion
from squatcalc.fixtures import random as random_matrix, real_scalar
from squatcalc.utils.counter_rng import CounterRng


@pytest.mark.parametrize("seed", range(5))
def test_transform_identity(seed):
    t = random_matrix(3, seed=seed, norm=1.0)
    res = transform_identity_residual(t, Quaternion(0.3, 1.2, -0.4, 0.6), 3.0)
    assert res.value <= 1e-9
    assert res.companion <= 1e-9
    assert float(res) == res.value


def test_transform_identity_domain():
    t = random_matrix(3, seed=0, norm=1.0)
    with pytest.raises(DomainError):
        transform_identity_residual(t, Quaternion(3.0), 3.0)
    with pytest.raises(DomainError):
        transform_identity_residual(real_scalar(2.0, 2), Quaternion(0.0, 1.0), 2.0)
    with pytest.raises(DomainError):
        transform_identity_residual(real_scalar(2.0, 2), Quaternion(2.0), 5.0)


def test_lemma_identities_on_seeded_draws():
    rng = CounterRng(2024)
    checked = 0
    for _ in range(300):
        s = Quaternion(*(rng.uniform(-5.0, 5.0) for _ in range(4)))
        k = rng.uniform(-10.0, 10.0)
        if abs(s - k) < 0.1:
            continue
        items = lemma_identities_residual(s, k)
        assert [i.name for i in items] == ["real_part", "modulus", "inverse_square", "vanishing_product"]
        for item in items:
            if not item.skipped:
                checked += 1
                assert item.residual <= 1e-11 * item.scale, item.name
    assert checked > 1000


def test_lemma_rejects_s_equal_k():
    with pytest.raises(DomainError):
        lemma_identities_residual(Quaternion(2.0), 2.0)
