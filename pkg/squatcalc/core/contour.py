"""
Contours in a complex slice and trapezoid quadrature of the S-resolvent kernel.

Circles live in the complex model of a slice: the complex number ``a + b i`` stands for the
quaternion ``a + b I`` of L_I. Each node of a circle ``s(theta) = c + r e^(I theta)`` carries the
weight ``orientation * r e^(I theta) / N``, which is ``(1 / 2 pi) ds_I`` with ``ds_I = ds (-I)``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import ContourInfeasible
from .linalg import QuatMatrix
from .quaternion import CANONICAL_UNIT, ImaginaryUnit, Quaternion, hamilton, slice_embed
from .refinement import Refined, refine
from .resolvent import accumulate_right, blocks_mass, s_resolvent_blocks
from .settings import DEFAULT_CONTOUR, DEFAULT_QUADRATURE, ContourSettings, QuadratureSettings
from .slice_functions import SliceFunction
from .spectrum import SpectrumReport

log = logging.getLogger(__name__)

# nodes per batched solve; keeps the stacked embeddings small
_CHUNK = 2048


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float
    orientation: int = 1

    def inside(self, z: complex) -> bool:
        return abs(z - self.center) < self.radius

    def distance(self, z: complex) -> float:
        return abs(abs(z - self.center) - self.radius)

    def to_json(self) -> dict[str, Any]:
        return {
            "center": [self.center.real, self.center.imag],
            "radius": self.radius,
            "orientation": self.orientation,
        }


@dataclass(frozen=True)
class Contour:
    slice_unit: ImaginaryUnit
    circles: tuple[Circle, ...]
    nodes_per_circle: int = DEFAULT_QUADRATURE.initial_nodes
    encloses_infinity: bool = False
    margin: float = 0.0

    def region_index(self, z: complex) -> int:
        """Winding count of the contour around ``z``; the point at infinity adds one when enclosed."""
        idx = sum(c.orientation for c in self.circles if c.inside(z))
        return idx + (1 if self.encloses_infinity else 0)

    def scaled(self, factor: float) -> "Contour":
        return replace(self, circles=tuple(replace(c, radius=c.radius * factor) for c in self.circles))

    def with_unit(self, unit: ImaginaryUnit) -> "Contour":
        return replace(self, slice_unit=unit)

    def nodes(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Complex nodes and weights of the ``n``-point trapezoid rule on every circle."""
        theta = 2.0 * np.pi * np.arange(n) / n
        e = np.exp(1j * theta)
        zs = [c.center + c.radius * e for c in self.circles]
        ws = [c.orientation * c.radius * e / n for c in self.circles]
        return np.concatenate(zs), np.concatenate(ws)

    def to_json(self) -> list[dict[str, Any]]:
        return [c.to_json() for c in self.circles]


def _slice_points(values: Iterable[Quaternion | complex]) -> list[complex]:
    """Both intersections ``x +- y i`` of each sphere with a slice."""
    out: list[complex] = []
    for v in values:
        if isinstance(v, Quaternion):
            x, y = v.re, v.im_norm()
        else:
            x, y = complex(v).real, abs(complex(v).imag)
        out.append(complex(x, y))
        if y != 0.0:
            out.append(complex(x, -y))
    return out


@dataclass
class _Cluster:
    points: list[complex]

    @property
    def center(self) -> complex:
        return complex(sum(self.points) / len(self.points))

    @property
    def spread(self) -> float:
        c = self.center
        return max(abs(p - c) for p in self.points)


def _cluster(points: Sequence[complex], threshold: float) -> list[_Cluster]:
    clusters = [_Cluster([p]) for p in points]
    merged = True
    while merged:
        merged = False
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                a, b = clusters[i], clusters[j]
                close = min(abs(p - q) for p in a.points for q in b.points) < threshold
                overlap = abs(a.center - b.center) - a.spread - b.spread < threshold
                if close or overlap:
                    a.points.extend(b.points)
                    del clusters[j]
                    merged = True
                    break
            if merged:
                break
    return clusters


def build_contour(
        spectrum: SpectrumReport,
        slice_unit: ImaginaryUnit = CANONICAL_UNIT,
        exclusions: Sequence[Quaternion | complex] = (),
        settings: ContourSettings = DEFAULT_CONTOUR,
        enclose_infinity: bool = False,
) -> Contour:
    norm = spectrum.norm_bound
    rmin = settings.radius_min_factor * (1.0 + norm)
    default = settings.default_radius_factor * (1.0 + norm)
    points = spectrum.complex_points()
    excl = _slice_points(exclusions)

    for p in points:
        for e in excl:
            if abs(p - e) <= rmin:
                raise ContourInfeasible(
                    f"excluded point {e} lies within {rmin:.3e} of the spectral point {p}",
                    extra={"spectral_point": [p.real, p.imag], "exclusion": [e.real, e.imag]},
                )

    clusters = _cluster(points, 3.0 * rmin)
    circles: list[Circle] = []
    for i, cl in enumerate(clusters):
        c, spread = cl.center, cl.spread
        gap = min(
            (abs(c - o.center) - spread - o.spread for j, o in enumerate(clusters) if j != i),
            default=math.inf,
        )
        dex = min((abs(e - c) - spread for e in excl), default=math.inf)
        if dex <= rmin:
            raise ContourInfeasible(
                f"excluded point lies inside the disk around the spectral cluster at {c}",
                extra={"cluster_center": [c.real, c.imag]},
            )
        if settings.radius is not None:
            pad = settings.radius
        else:
            pad = max(rmin, min(default, settings.gap_fraction * gap, settings.gap_fraction * dex))
        if spread + pad >= spread + dex:
            raise ContourInfeasible(f"radius {spread + pad:.6g} around {c} reaches an excluded point")
        circles.append(Circle(c, spread + pad))

    for i, a in enumerate(circles):
        for b in circles[i + 1:]:
            if abs(a.center - b.center) <= a.radius + b.radius:
                raise ContourInfeasible(f"circles around {a.center} and {b.center} overlap")

    if enclose_infinity:
        reach = max([abs(c.center) + c.radius for c in circles] + [abs(e) for e in excl] + [0.0])
        circles.append(Circle(0j, 2.0 * reach + 1.0, orientation=-1))

    log.debug("contour: %d circle(s), radius_min=%.3e, encloses_infinity=%s", len(circles), rmin, enclose_infinity)
    return Contour(slice_unit, tuple(circles), encloses_infinity=enclose_infinity, margin=rmin)


def check_admissible(
        contour: Contour,
        spectrum: SpectrumReport,
        exclusions: Sequence[Quaternion | complex] = (),
) -> None:
    """Every spectral point enclosed once, every excluded point not at all, circles kept apart."""
    margin = contour.margin
    for p in spectrum.complex_points():
        if contour.region_index(p) != 1:
            raise ContourInfeasible(f"spectral point {p} is not enclosed exactly once")
        if any(c.distance(p) < margin for c in contour.circles):
            raise ContourInfeasible(f"spectral point {p} is closer than {margin:.3e} to the contour")
    for e in _slice_points(exclusions):
        if contour.region_index(e) != 0:
            raise ContourInfeasible(f"singular point {e} of the function is enclosed by the contour")
        if any(c.distance(e) == 0.0 for c in contour.circles):
            raise ContourInfeasible(f"singular point {e} lies on the contour")
    positive = [c for c in contour.circles if c.orientation > 0]
    for i, a in enumerate(positive):
        for b in positive[i + 1:]:
            if abs(a.center - b.center) <= a.radius + b.radius:
                raise ContourInfeasible(f"circles around {a.center} and {b.center} overlap")


def integrate_kernel(
        t: QuatMatrix,
        f: SliceFunction,
        contour: Contour,
        settings: QuadratureSettings = DEFAULT_QUADRATURE,
) -> Refined:
    """``(1 / 2 pi) \\oint S^-1(s,T) ds_I f(s)`` by node-doubling trapezoid quadrature."""
    unit = contour.slice_unit
    eps = np.finfo(float).eps

    def evaluate(n: int) -> tuple[QuatMatrix, float]:
        zs, ws = contour.nodes(n)
        acc = QuatMatrix.zeros(t.n)
        mass = 0.0
        for lo in range(0, zs.size, _CHUNK):
            z, w = zs[lo:lo + _CHUNK], ws[lo:lo + _CHUNK]
            fv = f.eval_slice(z, unit)
            # weight first, then f(s): the kernel multiplies (ds_I f(s)) from the left
            coeffs = hamilton(slice_embed(w, unit), fv)
            a, b = s_resolvent_blocks(t, slice_embed(z, unit))
            acc = acc + accumulate_right(a, b, coeffs)
            mass += float(np.sum(np.abs(w) * np.linalg.norm(fv, axis=-1) * blocks_mass(a, b)))
        return acc, settings.roundoff_factor * eps * mass

    return refine(evaluate, settings)
