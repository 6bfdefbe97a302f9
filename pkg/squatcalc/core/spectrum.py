"""
S-spectrum of quaternionic matrices.

The S-spectrum is the set of ``s`` where the pencil ``Q_s(T) = T^2 - 2 Re[s] T + |s|^2 I`` is not
invertible. For a matrix it is the union of the spheres ``x + y S`` through the eigenvalues
``x +- y i`` of the complex adjoint chi(T), which always come in conjugate pairs.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import SolverFailure
from .linalg import QuatMatrix, is_singular, op_norm
from .quaternion import CANONICAL_UNIT, ImaginaryUnit, Quaternion
from .settings import DEFAULT_TOLERANCES, Tolerances

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpectralSphere:
    x: float
    y: float
    multiplicity: int = 1

    @property
    def is_real(self) -> bool:
        return self.y == 0.0

    def complex_points(self) -> list[complex]:
        """Intersection with a slice, in the complex model ``a + b i <-> a + b I``."""
        if self.is_real:
            return [complex(self.x, 0.0)]
        return [complex(self.x, self.y), complex(self.x, -self.y)]

    def points(self, unit: ImaginaryUnit = CANONICAL_UNIT) -> list[Quaternion]:
        return [Quaternion.from_complex(z, unit) for z in self.complex_points()]

    def contains(self, s: Quaternion, atol: float = 1e-8) -> bool:
        return abs(s.re - self.x) <= atol and abs(s.im_norm() - self.y) <= atol

    def to_json(self) -> dict[str, Any]:
        return {"x": self.x, "y": self.y, "mult": self.multiplicity}


@dataclass(frozen=True)
class PencilProbe:
    s: Quaternion
    sigma_min: float
    sigma_max: float


@dataclass(frozen=True)
class SpectrumReport:
    spheres: tuple[SpectralSphere, ...]
    norm_bound: float
    pencil_condition: tuple[PencilProbe, ...] = field(default=(), compare=False)

    def complex_points(self) -> list[complex]:
        return [z for sp in self.spheres for z in sp.complex_points()]

    def contains(self, s: Quaternion, atol: float = 1e-8) -> bool:
        return any(sp.contains(s, atol) for sp in self.spheres)

    def to_json(self) -> dict[str, Any]:
        return {"spheres": [sp.to_json() for sp in self.spheres], "norm_bound": self.norm_bound}


@dataclass(frozen=True)
class ResolventCertificate:
    member: bool
    sigma_min: float
    sigma_max: float

    def __bool__(self) -> bool:
        return self.member


def pencil(t: QuatMatrix, s: Quaternion | float) -> QuatMatrix:
    """``T^2 - 2 Re[s] T + |s|^2 I``; depends on ``s`` only through Re[s] and |s|."""
    s = s if isinstance(s, Quaternion) else Quaternion.real(s)
    return t @ t - t * (2.0 * s.re) + QuatMatrix.scalar(s.norm2(), t.n)


def pencil_sigmas(t: QuatMatrix, s: Quaternion | float) -> tuple[float, float]:
    sigmas = np.linalg.svd(pencil(t, s).embedding(), compute_uv=False)
    return float(sigmas[-1]), float(sigmas[0])


def pencil_scale(t: QuatMatrix, s: Quaternion | float, norm: float | None = None) -> float:
    """``||T||^2 + 2 |Re s| ||T|| + |s|^2``; singular values below ``rtol`` times this are rounding noise."""
    s = s if isinstance(s, Quaternion) else Quaternion.real(s)
    norm = op_norm(t) if norm is None else norm
    return norm * norm + 2.0 * abs(s.re) * norm + s.norm2()


def in_resolvent_set(
        t: QuatMatrix,
        s: Quaternion | float,
        tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ResolventCertificate:
    smin, smax = pencil_sigmas(t, s)
    singular = is_singular(smin, max(smax, pencil_scale(t, s)), tolerances.singular_rtol)
    return ResolventCertificate(not singular, smin, smax)


def s_spectrum(t: QuatMatrix, tolerances: Tolerances = DEFAULT_TOLERANCES) -> SpectrumReport:
    try:
        eig = np.linalg.eigvals(t.embedding())
    except np.linalg.LinAlgError as e:
        raise SolverFailure(e, message=f"eigenvalue solver failed: {e}") from e
    if not np.all(np.isfinite(eig)):
        raise SolverFailure(message="eigenvalue solver returned non-finite values")

    spheres = _group_spheres(eig, tolerances)
    norm = op_norm(t)
    probes = []
    for sp in spheres:
        s = sp.points()[0]
        smin, smax = pencil_sigmas(t, s)
        probes.append(PencilProbe(s, smin, smax))
    log.debug("S-spectrum of %dx%d operator: %d sphere(s), norm %.6g", t.n, t.n, len(spheres), norm)
    return SpectrumReport(tuple(spheres), norm, tuple(probes))


def _group_spheres(eig: np.ndarray, tolerances: Tolerances) -> list[SpectralSphere]:
    keys = sorted((float(z.real), abs(float(z.imag))) for z in eig)
    clusters: list[list[tuple[float, float]]] = []
    for x, y in keys:
        for cl in clusters:
            cx, cy = cl[0]
            scale = 1.0 + math.hypot(cx, cy)
            if abs(x - cx) <= tolerances.sphere_rtol * scale and abs(y - cy) <= tolerances.sphere_rtol * scale:
                cl.append((x, y))
                break
        else:
            clusters.append([(x, y)])

    spheres = []
    for cl in clusters:
        x = sum(p[0] for p in cl) / len(cl)
        y = sum(p[1] for p in cl) / len(cl)
        if y <= tolerances.real_tol * (1.0 + abs(x)):
            y = 0.0
        # chi(T) lists every sphere twice (x + yi and x - yi, or a real point twice)
        spheres.append(SpectralSphere(x, y, max(1, round(len(cl) / 2))))
    return spheres


def transform_spectrum(report: SpectrumReport, k: float) -> list[SpectralSphere]:
    """Image of each sphere under ``s -> (s - k)^-1``, for real ``k`` off the spectrum."""
    out = []
    for sp in report.spheres:
        p = 1.0 / (complex(sp.x, sp.y) - k)
        out.append(SpectralSphere(p.real, abs(p.imag), sp.multiplicity))
    return out


def sphere_distance(a: SpectralSphere, b: SpectralSphere) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)


def min_sphere_separation(report: SpectrumReport) -> float:
    """Smallest distance between two spectral points of one slice, conjugates included."""
    pts = report.complex_points()
    best = math.inf
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            best = min(best, abs(p - q))
    return best
