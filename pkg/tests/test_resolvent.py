import numpy as np
import pytest

from squatcalc.core.errors import DomainError, NotInResolventSet, SeriesDivergence
from squatcalc.core.linalg import QuatMatrix, invert, op_norm
from squatcalc.core.quaternion import ImaginaryUnit, J, Quaternion, slice_embed
from squatcalc.core.resolvent import (
    equation_residual,
    resolvent_equation_residual,
    s_left_inverse,
    s_resolvent,
    s_resolvent_blocks,
    s_resolvent_laurent,
    s_resolvent_series,
)
from squatcalc.fixtures import diag_i, random as random_matrix, real_scalar

PAIRS = [
    (random_matrix(3, seed=1, norm=1.0), Quaternion(0.4, 1.1, -0.3, 0.8)),
    (random_matrix(4, seed=2, norm=2.0), Quaternion(-1.5, 0.2, 0.9, -0.4)),
    (random_matrix(2, seed=3, norm=0.5), Quaternion(0.1, 0.0, 0.0, 2.0)),
]


def test_commuting_case_is_the_classical_resolvent():
    value = s_resolvent(diag_i(), 2.0).operator
    assert abs(value.entry(0, 0) - Quaternion(0.4, 0.2)) < 1e-14


def test_real_point_reduces_to_inverse():
    t = random_matrix(3, seed=5, norm=1.0)
    expected = invert(QuatMatrix.scalar(3.0, 3) - t)
    assert s_resolvent(t, 3.0).operator.allclose(expected, atol=1e-13)
    assert resolvent_equation_residual(t, 3.0) <= 1e-12


@pytest.mark.parametrize("s", [3.0, -2.5, 0.75])
def test_left_inverse_at_a_real_point_is_the_shifted_operator(s):
    t = random_matrix(3, seed=6, norm=0.5)
    expected = QuatMatrix.scalar(s, 3) - t
    assert s_left_inverse(t, s).allclose(expected, atol=1e-13)
    assert s_left_inverse(t, Quaternion(s)).allclose(expected, atol=1e-13)


@pytest.mark.parametrize("t,s", PAIRS)
def test_resolvent_equation(t, s):
    value = s_resolvent(t, s)
    assert equation_residual(t, s, value.operator) <= 1e-10 * (1.0 + op_norm(t))
    assert value.consistency is not None and value.consistency <= 1e-10
    assert value.pencil_condition >= 1.0


@pytest.mark.parametrize("t,s", PAIRS)
def test_left_inverse(t, s):
    kernel = s_resolvent(t, s).operator
    left = s_left_inverse(t, s)
    eye = QuatMatrix.identity(t.n)
    assert (left @ kernel).allclose(eye, atol=1e-10)
    assert (kernel @ left).allclose(eye, atol=1e-10)


def test_point_on_the_spectrum():
    with pytest.raises(NotInResolventSet):
        s_resolvent(diag_i(), J)
    with pytest.raises(NotInResolventSet):
        s_resolvent(real_scalar(2.0, 2), 2.0)


@pytest.mark.parametrize("t,s", PAIRS)
def test_power_series_within_tail_bound(t, s):
    s = s * (3.0 * op_norm(t) / abs(s))
    series = s_resolvent_series(t, s)
    closed = s_resolvent(t, s).operator
    assert series.ratio == pytest.approx(1.0 / 3.0)
    assert op_norm(series.value - closed) <= series.tail_bound + 1e-12 * (1.0 + op_norm(closed))


def test_power_series_with_fixed_terms():
    t = random_matrix(3, seed=8, norm=1.0)
    s = Quaternion(0.0, 0.0, 4.0)
    short = s_resolvent_series(t, s, terms=3)
    closed = s_resolvent(t, s).operator
    assert short.terms == 3
    assert op_norm(short.value - closed) <= short.tail_bound
    with pytest.raises(DomainError):
        s_resolvent_series(t, s, terms=0)


def test_power_series_needs_a_large_point():
    t = random_matrix(3, seed=8, norm=2.0)
    with pytest.raises(SeriesDivergence) as info:
        s_resolvent_series(t, Quaternion(1.0, 1.0))
    assert info.value.ratio == pytest.approx(2.0 / np.sqrt(2.0))


@pytest.mark.parametrize("t,s", PAIRS)
def test_laurent_form_within_tail_bound(t, s):
    x0 = s.re
    r = invert(QuatMatrix.scalar(x0, t.n) - t)
    s = Quaternion(x0) + s.im * (0.3 / (s.im_norm() * op_norm(r)))
    series = s_resolvent_laurent(t, s)
    closed = s_resolvent(t, s).operator
    assert series.ratio == pytest.approx(0.3)
    assert op_norm(series.value - closed) <= series.tail_bound + 1e-10 * (1.0 + op_norm(closed))


def test_laurent_form_diverges_far_from_the_real_axis():
    t = random_matrix(2, seed=4, norm=1.0)
    with pytest.raises(SeriesDivergence):
        s_resolvent_laurent(t, Quaternion(5.0, 0.0, 100.0))


def test_batched_blocks_match_single_evaluations():
    t = random_matrix(3, seed=10, norm=1.5)
    unit = ImaginaryUnit.of(1.0, -1.0, 0.5)
    zs = np.array([2.0 + 1.0j, -0.5 + 2.5j, 3.0 + 0.0j])
    a, b = s_resolvent_blocks(t, slice_embed(zs, unit), check=True)
    for j, z in enumerate(zs):
        single = s_resolvent(t, Quaternion.from_complex(complex(z), unit)).operator
        assert QuatMatrix(a[j], b[j]).allclose(single, atol=1e-12)


def test_batched_blocks_reject_spectral_nodes():
    with pytest.raises(NotInResolventSet):
        s_resolvent_blocks(diag_i(), np.array([[0.0, 0.0, 1.0, 0.0]]), check=True)
