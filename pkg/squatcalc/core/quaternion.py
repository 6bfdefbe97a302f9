"""
Quaternion arithmetic and slice geometry.

A quaternion ``q = w + x i + y j + z k`` is stored as four 64-bit floats. The complex
pair convention used across the package is ``q = (w + x i) + (y + z i) j``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import DomainError
from ..utils.counter_rng import CounterRng


@dataclass(frozen=True, slots=True)
class Quaternion:
    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def real(cls, a: float) -> "Quaternion":
        return cls(float(a), 0.0, 0.0, 0.0)

    @classmethod
    def from_array(cls, a: Sequence[float] | np.ndarray) -> "Quaternion":
        if len(a) != 4:
            raise ValueError(f"a quaternion needs 4 components, got {len(a)}")
        w, x, y, z = (float(v) for v in a)
        if not all(math.isfinite(v) for v in (w, x, y, z)):
            raise ValueError("quaternion components must be finite")
        return cls(w, x, y, z)

    @classmethod
    def from_pair(cls, z1: complex, z2: complex) -> "Quaternion":
        return cls(z1.real, z1.imag, z2.real, z2.imag)

    @classmethod
    def from_complex(cls, z: complex, unit: "ImaginaryUnit") -> "Quaternion":
        """The point ``Re z + Im z * unit`` of the slice L_unit."""
        u = unit.u
        return cls(z.real, z.imag * u.x, z.imag * u.y, z.imag * u.z)

    def __iter__(self) -> Iterator[float]:
        yield from (self.w, self.x, self.y, self.z)

    def __repr__(self) -> str:
        return f"Quaternion({self.w!r}, {self.x!r}i, {self.y!r}j, {self.z!r}k)"

    def __add__(self, other: "Quaternion | float") -> "Quaternion":
        if isinstance(other, Quaternion):
            return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)
        return Quaternion(self.w + float(other), self.x, self.y, self.z)

    __radd__ = __add__

    def __sub__(self, other: "Quaternion | float") -> "Quaternion":
        if isinstance(other, Quaternion):
            return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)
        return Quaternion(self.w - float(other), self.x, self.y, self.z)

    def __rsub__(self, other: float) -> "Quaternion":
        return Quaternion(float(other) - self.w, -self.x, -self.y, -self.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other: "Quaternion | float") -> "Quaternion":
        if isinstance(other, Quaternion):
            return mul(self, other)
        a = float(other)
        return Quaternion(self.w * a, self.x * a, self.y * a, self.z * a)

    def __rmul__(self, other: float) -> "Quaternion":
        # only reached for real scalars on the left, which commute
        a = float(other)
        return Quaternion(self.w * a, self.x * a, self.y * a, self.z * a)

    def __truediv__(self, other: float) -> "Quaternion":
        a = float(other)
        return Quaternion(self.w / a, self.x / a, self.y / a, self.z / a)

    def __abs__(self) -> float:
        return math.sqrt(self.norm2())

    def __pow__(self, n: int) -> "Quaternion":
        if n < 0:
            return inverse(self) ** (-n)
        out = Quaternion(1.0)
        for _ in range(n):
            out = out * self
        return out

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def inverse(self) -> "Quaternion":
        return inverse(self)

    @property
    def re(self) -> float:
        return self.w

    @property
    def im(self) -> "Quaternion":
        return Quaternion(0.0, self.x, self.y, self.z)

    def im_norm(self) -> float:
        return math.hypot(self.x, self.y, self.z)

    def is_real(self, tol: float = 0.0) -> bool:
        return self.im_norm() <= tol

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z], dtype=float)

    def as_pair(self) -> tuple[complex, complex]:
        return complex(self.w, self.x), complex(self.y, self.z)

    def to_json(self) -> list[float]:
        return [self.w, self.x, self.y, self.z]


ZERO = Quaternion()
ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True, slots=True)
class ImaginaryUnit:
    u: Quaternion

    def __post_init__(self):
        if self.u.w != 0.0 or abs(abs(self.u) - 1.0) > 1e-12:
            raise DomainError(f"{self.u!r} is not a unit imaginary quaternion")

    @classmethod
    def of(cls, x: float, y: float, z: float) -> "ImaginaryUnit":
        n = math.hypot(x, y, z)
        if n == 0.0:
            raise DomainError("the zero vector has no direction")
        return cls(Quaternion(0.0, x / n, y / n, z / n))

    @classmethod
    def parse(cls, q: Quaternion) -> "ImaginaryUnit":
        """Normalise the imaginary part of ``q``; the real part must vanish."""
        if q.w != 0.0:
            raise DomainError(f"slice unit must be purely imaginary, got {q!r}")
        return cls.of(q.x, q.y, q.z)

    def as_array(self) -> np.ndarray:
        return self.u.as_array()


CANONICAL_UNIT = ImaginaryUnit(I)


@dataclass(frozen=True, slots=True)
class SlicePoint:
    a: float
    b: float
    unit: ImaginaryUnit

    def embed(self) -> Quaternion:
        return Quaternion.from_complex(complex(self.a, self.b), self.unit)

    def as_complex(self) -> complex:
        return complex(self.a, self.b)


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product with ij = -ji = k, jk = -kj = i, ki = -ik = j."""
    return Quaternion(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )


def inverse(q: Quaternion) -> Quaternion:
    n2 = q.norm2()
    if n2 == 0.0:
        raise DomainError("zero quaternion has no inverse")
    return q.conj() / n2


def decompose(q: Quaternion) -> SlicePoint:
    """Write ``q = a + b I`` with ``b >= 0``; real inputs get the canonical unit i."""
    b = q.im_norm()
    if b == 0.0:
        return SlicePoint(q.w, 0.0, CANONICAL_UNIT)
    if q.y == 0.0 and q.z == 0.0:
        # already on L_i or L_{-i}; keep the embedding exact
        unit = CANONICAL_UNIT if q.x > 0 else ImaginaryUnit(-I)
        return SlicePoint(q.w, abs(q.x), unit)
    return SlicePoint(q.w, b, ImaginaryUnit(Quaternion(0.0, q.x / b, q.y / b, q.z / b)))


def sample_sphere(x: float, y: float, count: int, seed: int) -> list[Quaternion]:
    """Deterministic points ``x + y u`` with ``u`` uniform on the sphere of unit imaginaries."""
    if count < 1:
        raise DomainError(f"count must be at least 1, got {count}")
    if y < 0:
        raise DomainError(f"sphere radius must be nonnegative, got {y}")
    rng = CounterRng(seed)
    out = []
    for _ in range(count):
        ux, uy, uz = rng.unit_vector3()
        out.append(Quaternion(float(x), y * ux, y * uy, y * uz))
    return out


def random_unit(rng: CounterRng) -> ImaginaryUnit:
    return ImaginaryUnit.of(*rng.unit_vector3())


def random_quaternion(rng: CounterRng, scale: float = 1.0) -> Quaternion:
    return Quaternion(*(scale * rng.normal() for _ in range(4)))


# ---- vectorised helpers on (..., 4) arrays ----

def hamilton(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    pw, px, py, pz = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    qw, qx, qy, qz = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    return np.stack(
        [
            pw * qw - px * qx - py * qy - pz * qz,
            pw * qx + px * qw + py * qz - pz * qy,
            pw * qy - px * qz + py * qw + pz * qx,
            pw * qz + px * qy - py * qx + pz * qw,
        ],
        axis=-1,
    )


def slice_embed(z: np.ndarray, unit: ImaginaryUnit) -> np.ndarray:
    """Map complex numbers ``a + b i`` to the quaternions ``a + b I`` of the slice L_I."""
    z = np.asarray(z, dtype=complex)
    u = unit.as_array()
    out = np.zeros(z.shape + (4,), dtype=float)
    out[..., 0] = z.real
    out[..., 1:] = z.imag[..., None] * u[1:]
    return out


def to_pairs(q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    q = np.asarray(q, dtype=float)
    return q[..., 0] + 1j * q[..., 1], q[..., 2] + 1j * q[..., 3]


def from_pairs(z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
    return np.stack([np.real(z1), np.imag(z1), np.real(z2), np.imag(z2)], axis=-1)
