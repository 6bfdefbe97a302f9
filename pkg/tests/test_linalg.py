import numpy as np
import pytest

from squatcalc.core.errors import NotInvertible
from squatcalc.core.linalg import (
    MatrixPowers,
    QuatMatrix,
    invert,
    invert_with_certificate,
    op_norm,
    poly_eval,
)
from squatcalc.core.quaternion import I, J, K, Quaternion
from squatcalc.fixtures import random as random_matrix


def test_embedding_is_multiplicative():
    m, n = random_matrix(3, seed=1, norm=2.0), random_matrix(3, seed=2, norm=1.5)
    np.testing.assert_allclose((m @ n).embedding(), m.embedding() @ n.embedding(), atol=1e-12)


def test_entrywise_products_follow_hamilton():
    m = QuatMatrix.from_quaternions([[I, J], [K, 1.0]])
    n = QuatMatrix.from_quaternions([[J, 0.0], [0.0, I]])
    prod = m @ n
    assert prod.entry(0, 0) == I * J
    assert prod.entry(0, 1) == J * I
    assert prod.entry(1, 0) == K * J
    assert prod.entry(1, 1) == I


def test_scaling_on_either_side():
    m = random_matrix(3, seed=4)
    q = Quaternion(0.3, -1.0, 0.5, 2.0)
    assert m.right_scale(q).allclose(m @ QuatMatrix.scalar(q, 3), atol=1e-13)
    assert m.left_scale(q).allclose(QuatMatrix.scalar(q, 3) @ m, atol=1e-13)
    assert not m.right_scale(q).allclose(m.left_scale(q), atol=1e-6)


def test_inverse_with_certificate():
    m = random_matrix(4, seed=9, norm=3.0)
    cert = invert_with_certificate(m)
    assert (m @ cert.inverse).allclose(QuatMatrix.identity(4), atol=1e-10 * cert.condition)
    assert cert.condition >= 1.0


def test_singular_matrix_is_rejected():
    m = QuatMatrix.diag([1.0, 0.0])
    with pytest.raises(NotInvertible) as info:
        invert(m)
    assert info.value.sigma_min == 0.0


def test_op_norm_of_diagonal():
    m = QuatMatrix.diag([Quaternion(0.0, 3.0), 1.0, Quaternion(1.0, 1.0, 1.0, 1.0)])
    assert op_norm(m) == pytest.approx(3.0, rel=1e-14)


def test_json_codec_checks_dimension():
    m = random_matrix(2, seed=0)
    assert QuatMatrix.from_json(m.to_json()).allclose(m, atol=0.0)
    bad = dict(m.to_json(), n=3)
    with pytest.raises(ValueError):
        QuatMatrix.from_json(bad)
    with pytest.raises(ValueError):
        QuatMatrix.from_entries(np.zeros((2, 3, 4)))


def test_powers_and_polynomials():
    m = random_matrix(3, seed=6)
    powers = MatrixPowers(m)
    assert powers[3].allclose(m @ m @ m, atol=1e-14)
    a = Quaternion(0.0, 0.0, 1.0)
    expected = QuatMatrix.scalar(2.0, 3) + (m @ m).right_scale(a)
    assert poly_eval(m, [2.0, 0.0, a]).allclose(expected, atol=1e-14)
