import math

import pytest

from squatcalc.core.calculus import f_of_T_inverse_series
from squatcalc.core.errors import ContractError, NotInvertible
from squatcalc.core.linalg import QuatMatrix, op_norm
from squatcalc.core.settings import InverseSeriesSettings
from squatcalc.core.slice_functions import Polynomial, ResolventShift
from squatcalc.fixtures import real_scalar

F = ResolventShift(-5.0)
T = real_scalar(0.2, 2)
EXACT = 1.0 / 5.2


def test_partial_sums_approach_the_segment_integral():
    levels = [(5, 256), (10, 1024), (40, 4096)]
    results = [f_of_T_inverse_series(T, F, InverseSeriesSettings(n_max=n, nodes=m)) for n, m in levels]
    discrepancies = [r.discrepancy for r in results]
    assert discrepancies[0] > discrepancies[1] > discrepancies[2]
    assert discrepancies[-1] <= 1e-3
    for r in results:
        assert r.clamped
        assert r.axis_radius == pytest.approx(0.1)
        assert r.expansion_ratio == pytest.approx(0.5)
        assert r.discrepancy <= r.tail_bound + 1e-14


def test_partial_discrepancies_are_recorded():
    result = f_of_T_inverse_series(T, F, InverseSeriesSettings(n_max=20, nodes=512))
    history = result.partial_discrepancies
    assert len(history) == 21
    assert history[-1] == result.discrepancy
    assert history[-1] < 1e-4 * history[0]


def test_unclamped_segment_integral_tends_to_the_calculus():
    settings = [InverseSeriesSettings(n_max=0, axis_radius=r, clamp=False) for r in (10.0, 100.0)]
    errors = []
    for s in settings:
        result = f_of_T_inverse_series(T, F, s)
        assert not result.clamped
        assert math.isinf(result.tail_bound)
        errors.append(op_norm(result.segment_integral - QuatMatrix.scalar(EXACT, 2)))
    assert errors[1] < errors[0]
    assert errors[1] <= 5e-3


@pytest.mark.parametrize(
    "t,f",
    [
        (T, Polynomial((1.0,))),
        (T, ResolventShift(1.0)),
        (real_scalar(-1.0, 2), F),
    ],
    ids=["nonzero_at_infinity", "pole_in_right_half_plane", "spectrum_left_of_axis"],
)
def test_preconditions(t, f):
    with pytest.raises(ContractError):
        f_of_T_inverse_series(t, f)


def test_bad_settings():
    with pytest.raises(ContractError):
        f_of_T_inverse_series(T, F, InverseSeriesSettings(nodes=1))


def test_json_payload():
    data = f_of_T_inverse_series(T, F, InverseSeriesSettings(n_max=3, nodes=64)).to_json()
    assert data["axis_R_requested"] == 100.0
    assert data["axis_R"] == pytest.approx(0.1)
    assert data["n_max"] == 3
    assert data["contour_discrepancy"] == pytest.approx(0.16, abs=0.01)


def test_clamped_segment_stays_far_from_the_contour_value():
    results = [f_of_T_inverse_series(T, F, InverseSeriesSettings(n_max=n, nodes=512)) for n in (5, 10, 40)]
    distances = [r.contour_discrepancy for r in results]
    for r, d in zip(results, distances):
        assert r.clamped
        assert 0.15 < d < 0.17
        assert d > 1e-3
        # the partial sum lands on the segment integral, so the distance levels off there
        truncation = op_norm(r.segment_integral - QuatMatrix.scalar(EXACT, 2))
        assert abs(d - truncation) <= r.discrepancy + 1e-9
    assert max(distances) - min(distances) < 1e-3


def test_contour_discrepancy_shrinks_slowly_as_the_segment_grows():
    radii = (0.1, 0.15, 0.19)
    settings = [InverseSeriesSettings(n_max=200, axis_radius=r, clamp=False) for r in radii]
    distances = [f_of_T_inverse_series(T, F, s).contour_discrepancy for s in settings]
    assert distances[0] > distances[1] > distances[2] > 0.1


def test_singular_operator_is_not_invertible():
    with pytest.raises(NotInvertible):
        f_of_T_inverse_series(QuatMatrix.diag([0.0, 1.0]), F)
