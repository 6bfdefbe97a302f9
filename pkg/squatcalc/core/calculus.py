"""
The S-functional calculus of a quaternionic matrix.

``f(T) = (1 / 2 pi) \\oint S^-1(s,T) ds_I f(s)`` over a contour around the S-spectrum, the
unbounded-type calculus ``f(T) = phi(A)`` with ``A = (T - k I)^-1`` together with its direct form
``f(infinity) I + (1 / 2 pi) \\oint``, and the inverse-power expansion along the imaginary axis.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Any, Optional

import numpy as np

from .contour import Contour, build_contour, check_admissible, integrate_kernel
from .errors import ContourInfeasible, ContractError, NoRealResolventPoint, NotInResolventSet, QuadratureFailure
from .linalg import QuatMatrix, invert, invert_with_certificate, op_norm
from .quaternion import CANONICAL_UNIT, ImaginaryUnit, Quaternion, hamilton, slice_embed
from .resolvent import accumulate_right, s_resolvent_blocks
from .settings import (
    DEFAULT_CONTOUR,
    DEFAULT_INVERSE_SERIES,
    DEFAULT_QUADRATURE,
    DEFAULT_TOLERANCES,
    ContourSettings,
    InverseSeriesSettings,
    QuadratureSettings,
    Tolerances,
)
from .slice_functions import SliceFunction, compose_with_inverse_transform
from .spectrum import SpectrumReport, in_resolvent_set, s_spectrum

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CalculusResult:
    value: QuatMatrix
    error_estimate: float
    contour: Contour
    nodes: int = 0

    @property
    def slice_unit(self) -> ImaginaryUnit:
        return self.contour.slice_unit

    def to_json(self) -> dict[str, Any]:
        return {
            "value": self.value.to_json(),
            "error_estimate": self.error_estimate,
            "slice": self.slice_unit.u.to_json(),
            "contour": self.contour.to_json(),
            "nodes": self.nodes,
        }


def f_of_T(
        t: QuatMatrix,
        f: SliceFunction,
        contour: Optional[Contour] = None,
        *,
        slice_unit: ImaginaryUnit = CANONICAL_UNIT,
        spectrum: Optional[SpectrumReport] = None,
        quadrature: QuadratureSettings = DEFAULT_QUADRATURE,
        contour_settings: ContourSettings = DEFAULT_CONTOUR,
        tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> CalculusResult:
    spectrum = spectrum or s_spectrum(t, tolerances)
    singular = f.singularities()
    if contour is None:
        contour = build_contour(spectrum, slice_unit, singular, contour_settings)
    check_admissible(contour, spectrum, singular)

    refined = integrate_kernel(t, f, contour, quadrature)
    log.debug("f(T): %d node(s) per circle, error estimate %.3e", refined.nodes, refined.error_estimate)
    return CalculusResult(
        refined.value,
        refined.error_estimate,
        replace(contour, nodes_per_circle=refined.nodes),
        refined.nodes,
    )


# ---- unbounded-type calculus ----

@dataclass(frozen=True)
class UnboundedCalculusResult:
    transform: CalculusResult
    direct: CalculusResult
    k: float
    discrepancy: float

    @property
    def value(self) -> QuatMatrix:
        return self.transform.value

    def to_json(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "transform": self.transform.to_json(),
            "direct": self.direct.to_json(),
            "discrepancy": self.discrepancy,
        }


def select_k(
        t: QuatMatrix,
        tolerances: Tolerances = DEFAULT_TOLERANCES,
        max_steps: int = 64,
) -> float:
    """First real point of the S-resolvent set on the walk ceil(||T||)+1, -(ceil(||T||)+1), +2, ..."""
    start = math.ceil(op_norm(t)) + 1
    for step in range(max_steps):
        for k in (start + step, -(start + step)):
            if in_resolvent_set(t, float(k), tolerances):
                log.info("selected k=%d", k)
                return float(k)
    raise NoRealResolventPoint(f"no real resolvent point within {max_steps} unit steps of {start}")


def relative_discrepancy(a: QuatMatrix, b: QuatMatrix) -> float:
    scale = max(op_norm(a), op_norm(b))
    diff = op_norm(a - b)
    return diff / scale if scale > 0.0 else diff


def f_of_T_unbounded(
        t: QuatMatrix,
        f: SliceFunction,
        k: Optional[float] = None,
        *,
        slice_unit: ImaginaryUnit = CANONICAL_UNIT,
        quadrature: QuadratureSettings = DEFAULT_QUADRATURE,
        contour_settings: ContourSettings = DEFAULT_CONTOUR,
        tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> UnboundedCalculusResult:
    f_inf = f.value_at_infinity
    if f_inf is None:
        raise ContractError(f"{type(f).__name__} is not regular at infinity; declare value_at_infinity")

    if k is None:
        k = select_k(t, tolerances)
    else:
        cert = in_resolvent_set(t, float(k), tolerances)
        if not cert:
            raise NotInResolventSet(cert.sigma_min, message=f"k={k} lies on the S-spectrum")
    k = float(k)

    a = invert(t.shift(k), tolerances.singular_rtol)
    phi = compose_with_inverse_transform(f, k)
    transform = f_of_T(a, phi, slice_unit=slice_unit, quadrature=quadrature,
                       contour_settings=contour_settings, tolerances=tolerances)

    spectrum = s_spectrum(t, tolerances)
    outer = build_contour(spectrum, slice_unit, f.singularities(), contour_settings, enclose_infinity=True)
    integral = f_of_T(t, f, outer, spectrum=spectrum, quadrature=quadrature, tolerances=tolerances)
    direct = replace(integral, value=QuatMatrix.scalar(f_inf, t.n) + integral.value)

    discrepancy = relative_discrepancy(transform.value, direct.value)
    log.debug("unbounded calculus at k=%g: route discrepancy %.3e", k, discrepancy)
    return UnboundedCalculusResult(transform, direct, k, discrepancy)


# ---- inverse-power expansion along the imaginary axis ----

@dataclass(frozen=True)
class InverseSeriesResult:
    value: QuatMatrix
    n_max: int
    axis_radius_requested: float
    axis_radius: float
    nodes: int
    segment_integral: QuatMatrix
    discrepancy: float
    expansion_ratio: float
    tail_bound: float
    partial_discrepancies: tuple[float, ...] = ()
    contour_discrepancy: Optional[float] = None

    @property
    def clamped(self) -> bool:
        return self.axis_radius < self.axis_radius_requested

    def to_json(self) -> dict[str, Any]:
        return {
            "value": self.value.to_json(),
            "n_max": self.n_max,
            "axis_R_requested": self.axis_radius_requested,
            "axis_R": self.axis_radius,
            "nodes": self.nodes,
            "segment_integral": self.segment_integral.to_json(),
            "discrepancy": self.discrepancy,
            "ratio": self.expansion_ratio,
            "tail_bound": self.tail_bound,
            "contour_discrepancy": self.contour_discrepancy,
        }


def f_of_T_inverse_series(
        t: QuatMatrix,
        f: SliceFunction,
        settings: InverseSeriesSettings = DEFAULT_INVERSE_SERIES,
        *,
        slice_unit: ImaginaryUnit = CANONICAL_UNIT,
        tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> InverseSeriesResult:
    """
    ``sum_{n <= n_max} T^(-n-1) F_n`` with ``F_n = (1 / 2 pi) \\int_{-R}^{R} (y I)^n f(y I) dy``.

    The partial sums are compared with the kernel integral over the same segment,
    ``-(1 / 2 pi) \\int_{-R}^{R} S^-1(y I, T) f(y I) dy``, which they expand whenever
    ``R ||T^-1|| < 1``.

    ``contour_discrepancy`` is the distance from the partial sum to the contour value of f(T).
    Growing n_max drives the partial sum onto the segment integral, so this distance levels off
    at the truncation error of the segment. That error shrinks only as R grows, and slowly. With
    the default clamp the segment stays inside ``|y| <= 0.5 / ||T^-1||`` and misses most of the
    integral: it cannot come within 1e-3 of f(T). For ``T = 0.2 I`` and ``f = (q + 5)^-1`` the
    distance sits near 0.16 at every n_max.

    A singular T raises :class:`NotInvertible` before the spectrum is examined.
    """
    f_inf = f.value_at_infinity
    if f_inf is None or f_inf.norm2() != 0.0:
        raise ContractError("the inverse-power expansion needs f(infinity) = 0")
    if any(z.real >= 0.0 for z in f.singularities()):
        raise ContractError("f must be regular on the closed right half-plane")
    if settings.nodes < 2 or settings.n_max < 0:
        raise ContractError("need nodes >= 2 and n_max >= 0")
    t_inv = invert_with_certificate(t, tolerances.singular_rtol).inverse
    spectrum = s_spectrum(t, tolerances)
    if any(sp.x <= 0.0 for sp in spectrum.spheres):
        raise ContractError("the S-spectrum must lie in the open right half-space Re > 0")

    inv_norm = op_norm(t_inv)
    radius = settings.axis_radius
    if settings.clamp and radius * inv_norm > settings.expansion_fraction:
        radius = settings.expansion_fraction / inv_norm
        log.info("axis segment clamped from R=%g to R=%g (||T^-1||=%g)", settings.axis_radius, radius, inv_norm)
    ratio = radius * inv_norm
    if ratio >= 1.0:
        log.warning("kernel expansion diverges on the segment (ratio %.3g); partial sums are not meaningful", ratio)

    y = np.linspace(-radius, radius, settings.nodes)
    w = np.full(settings.nodes, 2.0 * radius / (settings.nodes - 1))
    w[0] *= 0.5
    w[-1] *= 0.5
    axis = 1j * y
    fy = f.eval_slice(axis, slice_unit)

    a, b = s_resolvent_blocks(t, slice_embed(axis, slice_unit))
    segment = accumulate_right(a, b, -(w / (2.0 * math.pi))[:, None] * fy)

    value = QuatMatrix.zeros(t.n)
    power = t_inv
    zn = np.ones_like(axis)
    history = []
    for n in range(settings.n_max + 1):
        weighted = (w / (2.0 * math.pi))[:, None] * hamilton(slice_embed(zn, slice_unit), fy)
        f_n = Quaternion.from_array(np.sum(weighted, axis=0))
        value = value + power.right_scale(f_n)
        history.append(op_norm(value - segment))
        power = power @ t_inv
        zn = zn * axis

    if ratio < 1.0:
        f_max = float(np.max(np.linalg.norm(fy, axis=-1)))
        tail = radius / math.pi * f_max * inv_norm * ratio ** (settings.n_max + 1) / (1.0 - ratio)
    else:
        tail = math.inf

    try:
        exact = f_of_T(t, f, slice_unit=slice_unit, spectrum=spectrum, tolerances=tolerances).value
        contour_discrepancy: Optional[float] = op_norm(value - exact)
    except (ContourInfeasible, QuadratureFailure) as e:
        log.warning("no contour value to compare with: %s", e)
        contour_discrepancy = None
    return InverseSeriesResult(
        value=value,
        n_max=settings.n_max,
        axis_radius_requested=settings.axis_radius,
        axis_radius=radius,
        nodes=settings.nodes,
        segment_integral=segment,
        discrepancy=history[-1],
        expansion_ratio=ratio,
        tail_bound=tail,
        partial_discrepancies=tuple(history),
        contour_discrepancy=contour_discrepancy,
    )
