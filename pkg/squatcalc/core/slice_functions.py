"""
Slice regular functions.

Every function here is left slice regular and is described by its stem pair: for a point
``q = x + I y`` of the slice L_I,

    f(x + I y) = alpha(x + y i) + I * beta(x + y i),

where alpha and beta are quaternion valued functions of one complex variable, even and odd in
``y`` respectively. For a power series ``sum_n q^n a_n`` (coefficients on the right),
``alpha = sum_n Re(z^n) a_n`` and ``beta = sum_n Im(z^n) a_n``; for intrinsic functions (real
coefficients) alpha and beta are the real and imaginary parts of the complex function.
Evaluation on a whole slice is therefore a vectorised complex computation.
"""
from __future__ import annotations

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Optional, Sequence, Union

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import ContractError, DomainError, TruncationError
from .quaternion import (
    CANONICAL_UNIT,
    ImaginaryUnit,
    Quaternion,
    decompose,
    hamilton,
    inverse,
)
from .settings import DEFAULT_SERIES, SeriesSettings
from ..utils.counter_rng import CounterRng

log = logging.getLogger(__name__)


class PointAtInfinity(Enum):
    INFINITY = "inf"

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = PointAtInfinity.INFINITY
ExtendedQuaternion = Union[Quaternion, PointAtInfinity]


def _q(v: Quaternion | float | Sequence[float]) -> Quaternion:
    if isinstance(v, Quaternion):
        return v
    if isinstance(v, (int, float)):
        return Quaternion.real(v)
    return Quaternion.from_array(v)


def _quat_stack(qs: Sequence[Quaternion]) -> np.ndarray:
    return np.array([q.as_array() for q in qs], dtype=float).reshape(len(qs), 4)


def _real_stem(g: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    alpha = np.zeros(g.shape + (4,))
    beta = np.zeros(g.shape + (4,))
    alpha[..., 0] = g.real
    beta[..., 0] = g.imag
    return alpha, beta


@dataclass(frozen=True)
class SliceFunction(ABC):
    declared_infinity: Optional[Quaternion] = field(default=None, kw_only=True)

    @abstractmethod
    def stem(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """(alpha, beta) at complex points ``z``; raises DomainError outside the domain."""

    def _derived_infinity(self) -> Optional[Quaternion]:
        return None

    @property
    def value_at_infinity(self) -> Optional[Quaternion]:
        if self.declared_infinity is not None:
            return self.declared_infinity
        return self._derived_infinity()

    def singularities(self) -> list[complex]:
        """Sphere representatives ``x + y i`` (y >= 0) where the function is not regular."""
        return []

    def eval_slice(self, z: np.ndarray | complex, unit: ImaginaryUnit = CANONICAL_UNIT) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        alpha, beta = self.stem(z)
        u = np.broadcast_to(unit.as_array(), beta.shape)
        return alpha + hamilton(u, beta)

    def eval(self, q: Quaternion | float) -> Quaternion:
        sp = decompose(_q(q))
        return Quaternion.from_array(self.eval_slice(np.array(sp.as_complex()), sp.unit))

    def __call__(self, q: Quaternion | float) -> Quaternion:
        return self.eval(q)

    def to_json(self) -> dict[str, Any]:
        return function_to_json(self)


@dataclass(frozen=True)
class Polynomial(SliceFunction):
    coeffs: tuple[Quaternion, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(_q(c) for c in self.coeffs))

    def stem(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        alpha = np.zeros(z.shape + (4,))
        beta = np.zeros(z.shape + (4,))
        zn = np.ones_like(z)
        for a in self.coeffs:
            av = a.as_array()
            alpha += zn.real[..., None] * av
            beta += zn.imag[..., None] * av
            zn = zn * z
        return alpha, beta

    @property
    def degree(self) -> int:
        d = len(self.coeffs) - 1
        while d > 0 and self.coeffs[d].norm2() == 0.0:
            d -= 1
        return max(d, 0)

    def _derived_infinity(self) -> Optional[Quaternion]:
        if not self.coeffs:
            return Quaternion()
        return self.coeffs[0] if self.degree == 0 else None

    def right_scale(self, a: Quaternion) -> "Polynomial":
        return Polynomial(tuple(c * a for c in self.coeffs))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        zero = Quaternion()
        pad = lambda cs: list(cs) + [zero] * (n - len(cs))  # noqa: E731
        return Polynomial(tuple(p + q for p, q in zip(pad(self.coeffs), pad(other.coeffs))))


@dataclass(frozen=True)
class PowerSeries(SliceFunction):
    """``sum_n (q - center)^n a_n`` on the ball ``|q - center| < radius``."""

    coeffs: Union[tuple[Quaternion, ...], Callable[[int], Quaternion]]
    center: float = 0.0
    radius: float = math.inf
    settings: SeriesSettings = DEFAULT_SERIES

    def __post_init__(self):
        if not callable(self.coeffs):
            object.__setattr__(self, "coeffs", tuple(_q(c) for c in self.coeffs))

    def _coefficient(self, n: int) -> Optional[Quaternion]:
        if callable(self.coeffs):
            return _q(self.coeffs(n))
        return self.coeffs[n] if n < len(self.coeffs) else None

    def stem(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        zeta = z - self.center
        dist = np.abs(zeta)
        if np.any(dist >= self.radius):
            raise DomainError(f"point outside the convergence ball |q - {self.center}| < {self.radius}")
        rho = dist / self.radius if math.isfinite(self.radius) else np.zeros_like(dist)

        alpha = np.zeros(z.shape + (4,))
        beta = np.zeros(z.shape + (4,))
        zn = np.ones_like(zeta)
        quiet = 0
        tail = np.inf
        for n in range(self.settings.max_terms):
            a = self._coefficient(n)
            if a is None:
                return alpha, beta
            av = a.as_array()
            alpha += zn.real[..., None] * av
            beta += zn.imag[..., None] * av
            term = np.abs(zn) * abs(a)
            partial = np.sqrt(np.sum(alpha ** 2, axis=-1) + np.sum(beta ** 2, axis=-1))
            tail_arr = term / (1.0 - rho)
            tail = float(np.max(tail_arr)) if tail_arr.size else 0.0
            if np.all(tail_arr <= self.settings.tail_rtol * np.maximum(partial, 1e-300)):
                quiet += 1
                # two quiet terms in a row so that a vanishing coefficient does not stop early
                if quiet >= 2:
                    return alpha, beta
            else:
                quiet = 0
            zn = zn * zeta
        raise TruncationError(self.settings.max_terms, tail)


@dataclass(frozen=True)
class IntrinsicRational(SliceFunction):
    """``num(q) / den(q)`` with real coefficients in ascending powers."""

    num: tuple[float, ...]
    den: tuple[float, ...]

    def __post_init__(self):
        num = _trim(self.num)
        den = _trim(self.den)
        if not den or all(c == 0.0 for c in den):
            raise ContractError("denominator must not vanish identically")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def stem(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        d = npoly.polyval(z, self.den)
        scale = npoly.polyval(np.abs(z), np.abs(np.asarray(self.den)))
        if np.any(np.abs(d) <= 1e-14 * np.maximum(scale, 1e-300)):
            raise DomainError("point is a pole of the rational function")
        return _real_stem(npoly.polyval(z, self.num or (0.0,)) / d)

    def singularities(self) -> list[complex]:
        if len(self.den) <= 1:
            return []
        return _upper_representatives(npoly.polyroots(self.den))

    def _derived_infinity(self) -> Optional[Quaternion]:
        dn, dd = len(self.num) - 1, len(self.den) - 1
        if not self.num:
            return Quaternion()
        if dn < dd:
            return Quaternion()
        if dn == dd:
            return Quaternion.real(self.num[-1] / self.den[-1])
        return None


@dataclass(frozen=True)
class Exponential(SliceFunction):
    def __post_init__(self):
        if self.declared_infinity is not None:
            raise ContractError("exp is not regular at infinity")

    def stem(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return _real_stem(np.exp(z))

    @property
    def value_at_infinity(self) -> Optional[Quaternion]:
        return None


@dataclass(frozen=True)
class ResolventShift(SliceFunction):
    """``(q - alpha)^-1`` for real ``alpha``."""

    alpha: float

    def stem(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        if np.any(z == self.alpha):
            raise DomainError(f"resolvent_shift is singular at {self.alpha}")
        return _real_stem(1.0 / (z - self.alpha))

    def singularities(self) -> list[complex]:
        return [complex(self.alpha, 0.0)]

    def _derived_infinity(self) -> Optional[Quaternion]:
        return Quaternion()


@dataclass(frozen=True)
class Transformed(SliceFunction):
    """``phi(p) = f(p^-1 + k)`` with ``phi(0) = f(infinity)``."""

    inner: SliceFunction
    k: float

    def stem(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        at_zero = z == 0
        if np.any(at_zero):
            f_inf = self.inner.value_at_infinity
            if f_inf is None:
                raise DomainError("transformed function is undefined at 0: inner function is not regular at infinity")
        safe = np.where(at_zero, 1.0, z)
        alpha, beta = self.inner.stem(1.0 / safe + self.k)
        if np.any(at_zero):
            alpha = np.where(at_zero[..., None], f_inf.as_array(), alpha)
            beta = np.where(at_zero[..., None], 0.0, beta)
        return alpha, beta

    def singularities(self) -> list[complex]:
        out = []
        for w in self.inner.singularities():
            if w == self.k:
                continue
            out.append(1.0 / (w - self.k))
        if self.inner.value_at_infinity is None:
            out.append(0j)
        return _upper_representatives(np.array(out, dtype=complex))

    def _derived_infinity(self) -> Optional[Quaternion]:
        try:
            return self.inner.eval(self.k)
        except DomainError:
            return None


def _trim(coeffs: Sequence[float]) -> tuple[float, ...]:
    c = [float(v) for v in coeffs]
    while c and c[-1] == 0.0:
        c.pop()
    return tuple(c)


def _upper_representatives(roots: np.ndarray) -> list[complex]:
    out: list[complex] = []
    for r in np.asarray(roots, dtype=complex):
        rep = complex(r.real, abs(r.imag))
        if all(abs(rep - o) > 1e-12 * (1.0 + abs(o)) for o in out):
            out.append(rep)
    return out


# ---- the transform s -> (s - k)^-1 ----

def phi_transform(s: ExtendedQuaternion, k: float) -> ExtendedQuaternion:
    if s is INFINITY:
        return Quaternion()
    d = s - k
    if d.norm2() == 0.0:
        return INFINITY
    return inverse(d)


def phi_inverse(p: ExtendedQuaternion, k: float) -> ExtendedQuaternion:
    if p is INFINITY:
        return Quaternion.real(k)
    if p.norm2() == 0.0:
        return INFINITY
    return inverse(p) + k


def compose_with_inverse_transform(f: SliceFunction, k: float) -> Transformed:
    if f.value_at_infinity is None:
        raise ContractError(f"{type(f).__name__} has no value at infinity; declare one or use a function regular at infinity")
    return Transformed(inner=f, k=float(k))


def estimate_value_at_infinity(f: SliceFunction, radius: float = 1e6, probes: int = 16, seed: int = 0) -> Quaternion:
    """Opt-in numerical limit: average of ``f`` over ``probes`` points with ``|q| = radius``."""
    rng = CounterRng(seed)
    acc = np.zeros(4)
    for _ in range(probes):
        theta = rng.uniform(0.0, 2.0 * math.pi)
        unit = ImaginaryUnit.of(*rng.unit_vector3())
        acc += f.eval_slice(np.array(radius * complex(math.cos(theta), math.sin(theta))), unit)
    return Quaternion.from_array(acc / probes)


# ---- regularity check ----

@dataclass(frozen=True)
class Disk:
    center: float = 0.0
    radius: float = 1.0


@dataclass(frozen=True)
class RegularityReport:
    max_residual: float
    units: tuple[ImaginaryUnit, ...]
    step: float
    probes: int


DEFAULT_PROBE_UNITS = (
    CANONICAL_UNIT,
    ImaginaryUnit.of(0.0, 1.0, 0.0),
    ImaginaryUnit.of(0.0, 0.0, 1.0),
    ImaginaryUnit.of(1.0, 1.0, 1.0),
)


def _slice_evaluator(f: SliceFunction | Callable[[Quaternion], Quaternion]) -> Callable[[np.ndarray, ImaginaryUnit], np.ndarray]:
    if isinstance(f, SliceFunction):
        return f.eval_slice

    def evaluate(z: np.ndarray, unit: ImaginaryUnit) -> np.ndarray:
        flat = [f(Quaternion.from_complex(complex(v), unit)).as_array() for v in z.ravel()]
        return np.array(flat, dtype=float).reshape(z.shape + (4,))

    return evaluate


def check_regularity(
        f: SliceFunction | Callable[[Quaternion], Quaternion],
        region: Disk = Disk(),
        step: float = 1e-3,
        units: Sequence[ImaginaryUnit] = DEFAULT_PROBE_UNITS,
        grid: int = 9,
) -> RegularityReport:
    """
    Largest central-difference residual of ``1/2 (d/dx + I d/dy) f_I`` over a ``grid x grid``
    lattice inside ``region`` on every probe slice.
    """
    if len(units) < 3:
        raise ContractError("regularity needs at least 3 probe slices")
    evaluate = _slice_evaluator(f)
    r = region.radius - step
    ticks = np.linspace(-r, r, grid)
    xs, ys = np.meshgrid(region.center + ticks, ticks)
    inside = (xs - region.center) ** 2 + ys ** 2 <= r * r
    z = (xs + 1j * ys)[inside]

    worst = 0.0
    for unit in units:
        dx = (evaluate(z + step, unit) - evaluate(z - step, unit)) / (2.0 * step)
        dy = (evaluate(z + 1j * step, unit) - evaluate(z - 1j * step, unit)) / (2.0 * step)
        u = np.broadcast_to(unit.as_array(), dy.shape)
        res = 0.5 * (dx + hamilton(u, dy))
        worst = max(worst, float(np.max(np.linalg.norm(res, axis=-1))))
    return RegularityReport(worst, tuple(units), step, int(z.size) * len(units))


# ---- JSON function specs ----

def function_from_json(data: dict[str, Any]) -> SliceFunction:
    kind = data.get("type")
    declared = data.get("value_at_infinity")
    extra: dict[str, Any] = {}
    if declared is not None:
        extra["declared_infinity"] = Quaternion.from_array(declared)

    if kind == "polynomial":
        return Polynomial(tuple(Quaternion.from_array(c) for c in data["coeffs"]), **extra)
    if kind == "power_series":
        return PowerSeries(
            tuple(Quaternion.from_array(c) for c in data["coeffs"]),
            center=float(data.get("center", 0.0)),
            radius=float(data.get("radius", math.inf)),
            **extra,
        )
    if kind == "intrinsic_rational":
        return IntrinsicRational(tuple(float(c) for c in data["num"]), tuple(float(c) for c in data["den"]), **extra)
    if kind == "exp":
        return Exponential(**extra)
    if kind == "resolvent_shift":
        return ResolventShift(float(data["alpha"]), **extra)
    if kind == "transformed":
        return Transformed(function_from_json(data["inner"]), float(data["k"]), **extra)
    raise ValueError(f"unknown function type: {kind!r}")


def function_to_json(f: SliceFunction) -> dict[str, Any]:
    if isinstance(f, Polynomial):
        out: dict[str, Any] = {"type": "polynomial", "coeffs": [c.to_json() for c in f.coeffs]}
    elif isinstance(f, PowerSeries):
        if callable(f.coeffs):
            raise ValueError("power series with generated coefficients has no JSON form")
        out = {"type": "power_series", "coeffs": [c.to_json() for c in f.coeffs], "center": f.center, "radius": f.radius}
    elif isinstance(f, IntrinsicRational):
        out = {"type": "intrinsic_rational", "num": list(f.num), "den": list(f.den)}
    elif isinstance(f, Exponential):
        out = {"type": "exp"}
    elif isinstance(f, ResolventShift):
        out = {"type": "resolvent_shift", "alpha": f.alpha}
    elif isinstance(f, Transformed):
        out = {"type": "transformed", "inner": function_to_json(f.inner), "k": f.k}
    else:
        raise ValueError(f"no JSON form for {type(f).__name__}")
    if f.declared_infinity is not None:
        out["value_at_infinity"] = f.declared_infinity.to_json()
    return out
