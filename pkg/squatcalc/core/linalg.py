"""
Quaternionic matrices as right-linear operators on H^n.

A matrix is stored as the complex pair ``M = A + B j`` (entrywise ``q = (w + x i) + (y + z i) j``)
and every product, inverse, norm and eigenvalue goes through the complex adjoint

    chi(M) = [[A, B], [-conj(B), conj(A)]],

which satisfies chi(MN) = chi(M) chi(N) and chi(I) = I.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np

from .errors import NotInvertible
from .quaternion import Quaternion, from_pairs, to_pairs
from .settings import DEFAULT_TOLERANCES


class QuatMatrix:
    __slots__ = ("_a", "_b")

    def __init__(self, a: np.ndarray, b: np.ndarray):
        a = np.array(a, dtype=complex)
        b = np.array(b, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape != b.shape:
            raise ValueError(f"expected two n x n complex blocks, got {a.shape} and {b.shape}")
        a.setflags(write=False)
        b.setflags(write=False)
        self._a = a
        self._b = b

    # ---- construction ----
    @classmethod
    def identity(cls, n: int) -> "QuatMatrix":
        return cls(np.eye(n), np.zeros((n, n)))

    @classmethod
    def zeros(cls, n: int) -> "QuatMatrix":
        return cls(np.zeros((n, n)), np.zeros((n, n)))

    @classmethod
    def scalar(cls, q: Quaternion | float, n: int) -> "QuatMatrix":
        q = q if isinstance(q, Quaternion) else Quaternion.real(q)
        z1, z2 = q.as_pair()
        return cls(z1 * np.eye(n), z2 * np.eye(n))

    @classmethod
    def diag(cls, values: Sequence[Quaternion | float]) -> "QuatMatrix":
        qs = [v if isinstance(v, Quaternion) else Quaternion.real(v) for v in values]
        pairs = [q.as_pair() for q in qs]
        return cls(np.diag([p[0] for p in pairs]), np.diag([p[1] for p in pairs]))

    @classmethod
    def from_entries(cls, entries: np.ndarray | Sequence[Any]) -> "QuatMatrix":
        e = np.asarray(entries, dtype=float)
        if e.ndim != 3 or e.shape[0] != e.shape[1] or e.shape[2] != 4:
            raise ValueError(f"entries must have shape (n, n, 4), got {e.shape}")
        if not np.all(np.isfinite(e)):
            raise ValueError("matrix entries must be finite")
        a, b = to_pairs(e)
        return cls(a, b)

    @classmethod
    def from_quaternions(cls, rows: Sequence[Sequence[Quaternion | float]]) -> "QuatMatrix":
        return cls.from_entries(
            [[(v if isinstance(v, Quaternion) else Quaternion.real(v)).as_array() for v in row] for row in rows]
        )

    @classmethod
    def from_embedding(cls, chi: np.ndarray) -> "QuatMatrix":
        n = chi.shape[0] // 2
        return cls(chi[:n, :n], chi[:n, n:])

    # ---- views ----
    @property
    def n(self) -> int:
        return self._a.shape[0]

    @property
    def blocks(self) -> tuple[np.ndarray, np.ndarray]:
        return self._a, self._b

    def entries(self) -> np.ndarray:
        return from_pairs(self._a, self._b)

    def entry(self, i: int, j: int) -> Quaternion:
        return Quaternion.from_pair(complex(self._a[i, j]), complex(self._b[i, j]))

    def embedding(self) -> np.ndarray:
        return embed(self._a, self._b)

    def __repr__(self) -> str:
        return f"QuatMatrix(n={self.n})"

    # ---- arithmetic ----
    def __add__(self, other: "QuatMatrix") -> "QuatMatrix":
        _check_dims(self, other)
        return QuatMatrix(self._a + other._a, self._b + other._b)

    def __sub__(self, other: "QuatMatrix") -> "QuatMatrix":
        _check_dims(self, other)
        return QuatMatrix(self._a - other._a, self._b - other._b)

    def __neg__(self) -> "QuatMatrix":
        return QuatMatrix(-self._a, -self._b)

    def __mul__(self, t: float) -> "QuatMatrix":
        t = float(t)
        return QuatMatrix(self._a * t, self._b * t)

    __rmul__ = __mul__

    def __matmul__(self, other: "QuatMatrix") -> "QuatMatrix":
        return matmul(self, other)

    def right_scale(self, q: Quaternion) -> "QuatMatrix":
        """``M q``: every entry multiplied by ``q`` on the right."""
        s1, s2 = q.as_pair()
        a, b = self._a, self._b
        return QuatMatrix(a * s1 - b * np.conj(s2), a * s2 + b * np.conj(s1))

    def left_scale(self, q: Quaternion) -> "QuatMatrix":
        """``q M``: every entry multiplied by ``q`` on the left."""
        s1, s2 = q.as_pair()
        a, b = self._a, self._b
        return QuatMatrix(s1 * a - s2 * np.conj(b), s1 * b + s2 * np.conj(a))

    def shift(self, q: Quaternion | float) -> "QuatMatrix":
        """``M - q I``."""
        return self - QuatMatrix.scalar(q, self.n)

    def allclose(self, other: "QuatMatrix", atol: float = 1e-12, rtol: float = 0.0) -> bool:
        _check_dims(self, other)
        return bool(op_norm(self - other) <= atol + rtol * op_norm(other))

    # ---- codec ----
    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "entries": self.entries().tolist()}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "QuatMatrix":
        n = int(data["n"])
        m = cls.from_entries(data["entries"])
        if m.n != n:
            raise ValueError(f"declared n={n} but entries are {m.n} x {m.n}")
        return m


def _check_dims(m: QuatMatrix, n: QuatMatrix) -> None:
    if m.n != n.n:
        raise ValueError(f"dimension mismatch: {m.n} vs {n.n}")


def embed(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Complex adjoint of ``A + B j``; works on stacked blocks of shape (..., n, n)."""
    top = np.concatenate([a, b], axis=-1)
    bottom = np.concatenate([-np.conj(b), np.conj(a)], axis=-1)
    return np.concatenate([top, bottom], axis=-2)


def scalar_embedding(q: np.ndarray, n: int) -> np.ndarray:
    """chi(q I_n) for a stack of quaternions ``q`` of shape (..., 4)."""
    z1, z2 = to_pairs(q)
    eye = np.eye(n)
    a = z1[..., None, None] * eye
    b = z2[..., None, None] * eye
    return embed(a, b)


def matmul(m: QuatMatrix, n: QuatMatrix) -> QuatMatrix:
    _check_dims(m, n)
    a1, b1 = m.blocks
    a2, b2 = n.blocks
    return QuatMatrix(a1 @ a2 - b1 @ np.conj(b2), a1 @ b2 + b1 @ np.conj(a2))


def singular_values(m: QuatMatrix) -> np.ndarray:
    return np.linalg.svd(m.embedding(), compute_uv=False)


def is_singular(sigma_min: float, sigma_max: float, rtol: float = DEFAULT_TOLERANCES.singular_rtol) -> bool:
    return sigma_min <= rtol * sigma_max


def op_norm(m: QuatMatrix) -> float:
    """Operator norm on H^n, the largest singular value of chi(M)."""
    if m.n == 0:
        return 0.0
    return float(np.linalg.norm(m.embedding(), 2))


@dataclass(frozen=True)
class InverseCertificate:
    inverse: QuatMatrix
    sigma_min: float
    sigma_max: float

    @property
    def condition(self) -> float:
        return self.sigma_max / self.sigma_min


def invert_with_certificate(m: QuatMatrix, rtol: float = DEFAULT_TOLERANCES.singular_rtol) -> InverseCertificate:
    chi = m.embedding()
    sigmas = np.linalg.svd(chi, compute_uv=False)
    smax, smin = float(sigmas[0]), float(sigmas[-1])
    if is_singular(smin, smax, rtol):
        raise NotInvertible(smin, smax)
    inv = np.linalg.inv(chi)
    return InverseCertificate(QuatMatrix.from_embedding(inv), smin, smax)


def invert(m: QuatMatrix, rtol: float = DEFAULT_TOLERANCES.singular_rtol) -> QuatMatrix:
    return invert_with_certificate(m, rtol).inverse


class MatrixPowers:
    """Lazily computed powers ``M^0, M^1, ...`` with every intermediate kept."""

    def __init__(self, m: QuatMatrix):
        self._m = m
        self._powers = [QuatMatrix.identity(m.n)]

    def __getitem__(self, k: int) -> QuatMatrix:
        while len(self._powers) <= k:
            self._powers.append(self._powers[-1] @ self._m)
        return self._powers[k]


def poly_eval(m: QuatMatrix, coeffs: Sequence[Quaternion | float]) -> QuatMatrix:
    """``sum_n M^n a_n`` with every coefficient acting on the right."""
    powers = MatrixPowers(m)
    out = QuatMatrix.zeros(m.n)
    for k, a in enumerate(coeffs):
        a = a if isinstance(a, Quaternion) else Quaternion.real(a)
        if a.norm2() == 0.0:
            continue
        out = out + powers[k].right_scale(a)
    return out
