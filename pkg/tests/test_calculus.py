import pytest

from squatcalc.core.calculus import f_of_T, relative_discrepancy
from squatcalc.core.contour import build_contour
from squatcalc.core.errors import DomainError, TruncationError
from squatcalc.core.linalg import QuatMatrix, invert, op_norm
from squatcalc.core.quaternion import Quaternion, random_unit
from squatcalc.core.settings import ContourSettings, QuadratureSettings
from squatcalc.core.slice_functions import Exponential, IntrinsicRational, Polynomial, PowerSeries, ResolventShift
from squatcalc.core.spectrum import min_sphere_separation, s_spectrum
from squatcalc.fixtures import diag_i, random as random_matrix, real_scalar
from squatcalc.utils.counter_rng import CounterRng


def _separated(count: int, n: int = 4):
    """Seeds whose random operator keeps its spectral points at least 0.1 apart."""
    out = []
    for seed in range(40):
        t = random_matrix(n, seed=seed)
        if min_sphere_separation(s_spectrum(t)) >= 0.1:
            out.append(t)
        if len(out) == count:
            break
    return out


SEPARATED = _separated(10)


def test_enough_separated_operators():
    assert len(SEPARATED) == 10


@pytest.mark.parametrize("m", range(6))
def test_monomials_reproduce_matrix_powers(m):
    f = Polynomial(tuple([0.0] * m + [1.0]))
    for t in SEPARATED:
        expected = QuatMatrix.identity(t.n)
        for _ in range(m):
            expected = expected @ t
        result = f_of_T(t, f)
        assert op_norm(result.value - expected) <= 1e-8 * (1.0 + op_norm(expected))
        assert result.error_estimate <= 1e-8 * (1.0 + op_norm(expected))


def test_quaternion_coefficients_act_on_the_right():
    t = SEPARATED[0]
    a = Quaternion(0.3, -1.0, 2.0, 0.5)
    result = f_of_T(t, Polynomial((Quaternion(), a)))
    assert result.value.allclose(t.right_scale(a), atol=1e-9)


def test_commuting_exponential():
    value = f_of_T(diag_i(), Exponential()).value
    expected = Exponential().eval(Quaternion(0.0, 1.0))
    assert abs(value.entry(0, 0) - expected) < 1e-10


def test_resolvent_shift_gives_the_inverse():
    t = SEPARATED[1]
    alpha = 3.0
    value = f_of_T(t, ResolventShift(alpha)).value
    assert value.allclose(invert(t.shift(alpha)), atol=1e-9)


def test_power_series_and_rational_agree():
    # 1 / (1 - q / 4) on |q| < 4
    t = SEPARATED[2]
    series = PowerSeries(lambda n: 0.25 ** n, radius=4.0)
    rational = IntrinsicRational((4.0,), (4.0, -1.0))
    a = f_of_T(t, series, contour=build_contour(s_spectrum(t))).value
    b = f_of_T(t, rational).value
    assert relative_discrepancy(a, b) <= 1e-9


def test_contour_must_stay_inside_the_convergence_ball():
    with pytest.raises(TruncationError):
        PowerSeries(lambda n: 1.0, radius=1.0).eval(0.9999999999)
    with pytest.raises(DomainError):
        f_of_T(real_scalar(0.9, 1), PowerSeries(lambda n: 1.0, radius=1.0))


@pytest.mark.parametrize("t", SEPARATED)
def test_independent_of_contour_and_slice(t):
    f = Exponential()
    spectrum = s_spectrum(t)
    contour = build_contour(spectrum, settings=ContourSettings(gap_fraction=0.2, default_radius_factor=0.1))
    base = f_of_T(t, f, contour, spectrum=spectrum)
    unit = random_unit(CounterRng(7))
    for other in (contour.scaled(2.0), contour.with_unit(unit)):
        alt = f_of_T(t, f, other, spectrum=spectrum)
        slack = 2.0 * max(base.error_estimate, alt.error_estimate) + 1e-10 * (1.0 + op_norm(base.value))
        assert op_norm(base.value - alt.value) <= slack
    assert alt.slice_unit == unit


def test_result_reports_nodes_and_contour():
    result = f_of_T(diag_i(), Polynomial((0.0, 0.0, 1.0)), quadrature=QuadratureSettings(rtol=1e-12))
    assert result.nodes >= 128
    assert result.contour.nodes_per_circle == result.nodes
    data = result.to_json()
    assert set(data) == {"value", "error_estimate", "slice", "contour", "nodes"}
    assert data["slice"] == [0.0, 1.0, 0.0, 0.0]


@pytest.mark.parametrize("t", SEPARATED[:5])
def test_right_linear_in_the_function(t):
    a = Quaternion(0.5, -1.0, 0.25, 2.0)
    b = Quaternion(-1.5, 0.0, 3.0, -0.5)
    p = (1.0, -2.0, 0.5, 0.0)
    r = (0.0, 1.0, 0.0, 1.0)
    combined = Polynomial(tuple(pn * a + rn * b for pn, rn in zip(p, r)))
    expected = f_of_T(t, Polynomial(p)).value.right_scale(a) + f_of_T(t, Polynomial(r)).value.right_scale(b)
    result = f_of_T(t, combined)
    assert op_norm(result.value - expected) <= 1e-8 * (1.0 + op_norm(expected))
