"""
S-resolvent operators.

Four ways of computing the noncommutative Cauchy kernel of a matrix ``T``:

- closed form   ``S^-1(s,T) = -Q_s(T)^-1 (T - conj(s) I)``
- power series  ``sum_n T^n s^(-1-n)``, for ``||T|| < |s|``
- Laurent form  ``sum_n (Re[s] I - T)^(-n-1) (Re[s] - s)^n``, for ``|Im s| ||(Re[s] I - T)^-1|| < 1``
- left inverse  ``S(s,T) = (T - conj(s) I)^-1 s (T - conj(s) I) - T``

Scalars multiply matrices on the right throughout.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, NotInResolventSet, SeriesDivergence
from .linalg import (
    QuatMatrix,
    invert,
    invert_with_certificate,
    is_singular,
    op_norm,
    scalar_embedding,
)
from .quaternion import Quaternion, inverse, to_pairs
from .settings import DEFAULT_SERIES, DEFAULT_TOLERANCES, SeriesSettings, Tolerances
from .spectrum import pencil, pencil_scale

log = logging.getLogger(__name__)


def _as_q(s: Quaternion | float) -> Quaternion:
    return s if isinstance(s, Quaternion) else Quaternion.real(s)


@dataclass(frozen=True)
class ResolventValue:
    operator: QuatMatrix
    s: Quaternion
    pencil_sigma_min: float
    pencil_sigma_max: float
    # ||closed - commuted|| / (1 + ||closed||); None when the pencil is too ill conditioned to judge
    consistency: Optional[float] = None

    @property
    def pencil_condition(self) -> float:
        return self.pencil_sigma_max / self.pencil_sigma_min

    def to_json(self) -> dict:
        return {
            "s": self.s.to_json(),
            "value": self.operator.to_json(),
            "sigma_min": self.pencil_sigma_min,
            "sigma_max": self.pencil_sigma_max,
        }


@dataclass(frozen=True)
class SeriesResult:
    value: QuatMatrix
    terms: int
    ratio: float
    tail_bound: float

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "terms": self.terms,
            "ratio": self.ratio,
            "tail_bound": self.tail_bound,
        }


def s_resolvent(
        t: QuatMatrix,
        s: Quaternion | float,
        tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ResolventValue:
    s = _as_q(s)
    q = pencil(t, s)
    chi = q.embedding()
    sigmas = np.linalg.svd(chi, compute_uv=False)
    smax, smin = float(sigmas[0]), float(sigmas[-1])
    if is_singular(smin, max(smax, pencil_scale(t, s)), tolerances.singular_rtol):
        raise NotInResolventSet(smin)

    q_inv = QuatMatrix.from_embedding(np.linalg.inv(chi))
    value = -(q_inv @ t.shift(s.conj()))

    consistency = None
    if smin >= tolerances.conditioning_floor * smax:
        # Q_s commutes with T, so T Q^-1 - Q^-1 conj(s) is the same operator
        commuted = -(t @ q_inv - q_inv.right_scale(s.conj()))
        consistency = op_norm(value - commuted) / (1.0 + op_norm(value))
        if consistency > 1e-8:
            log.warning("closed and commuted S-resolvent forms disagree by %.3e at s=%r", consistency, s)
    return ResolventValue(value, s, smin, smax, consistency)


def _auto_terms(ratio: float, settings: SeriesSettings) -> int:
    if ratio == 0.0:
        return 1
    return min(settings.max_terms, max(1, math.ceil(math.log(settings.tail_rtol) / math.log(ratio))))


def s_resolvent_series(
        t: QuatMatrix,
        s: Quaternion | float,
        terms: Optional[int] = None,
        settings: SeriesSettings = DEFAULT_SERIES,
) -> SeriesResult:
    """
    ``sum_{n < terms} T^n s^(-1-n)`` with tail bound ``(||T||/|s|)^terms / (|s| - ||T||)``.

    ``terms=None`` picks the smallest count whose tail bound is below
    ``tail_rtol / (|s| - ||T||)``, capped at ``settings.max_terms``.
    """
    s = _as_q(s)
    norm, mod = op_norm(t), abs(s)
    if mod == 0.0 or norm >= mod:
        raise SeriesDivergence(math.inf if mod == 0.0 else norm / mod,
                               message=f"series needs ||T|| < |s| (||T||={norm:.6g}, |s|={mod:.6g})")
    ratio = norm / mod
    if terms is None:
        terms = _auto_terms(ratio, settings)
    if terms < 1:
        raise DomainError(f"terms must be at least 1, got {terms}")

    s_inv = inverse(s)
    acc = QuatMatrix.zeros(t.n)
    power = QuatMatrix.identity(t.n)
    coeff = s_inv
    for n in range(terms):
        acc = acc + power.right_scale(coeff)
        if n + 1 < terms:
            power = power @ t
            coeff = coeff * s_inv
    tail = ratio ** terms / (mod - norm)
    return SeriesResult(acc, terms, ratio, tail)


def s_left_inverse(t: QuatMatrix, s: Quaternion | float) -> QuatMatrix:
    s = _as_q(s)
    shifted = t.shift(s.conj())
    return invert(shifted) @ QuatMatrix.scalar(s, t.n) @ shifted - t


def equation_residual(t: QuatMatrix, s: Quaternion, operator: QuatMatrix) -> float:
    """``||R s - T R - I||`` for a candidate resolvent ``R``."""
    return op_norm(operator.right_scale(s) - t @ operator - QuatMatrix.identity(t.n))


def resolvent_equation_residual(
        t: QuatMatrix,
        s: Quaternion | float,
        tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    s = _as_q(s)
    return equation_residual(t, s, s_resolvent(t, s, tolerances).operator)


def s_resolvent_laurent(
        t: QuatMatrix,
        s: Quaternion | float,
        terms: Optional[int] = None,
        settings: SeriesSettings = DEFAULT_SERIES,
        tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> SeriesResult:
    s = _as_q(s)
    base = QuatMatrix.scalar(s.re, t.n) - t
    r = invert_with_certificate(base, tolerances.singular_rtol).inverse
    r_norm = op_norm(r)
    ratio = s.im_norm() * r_norm
    if ratio >= 1.0:
        raise SeriesDivergence(ratio, message=f"Laurent expansion needs |Im s| ||(Re[s] I - T)^-1|| < 1, got {ratio:.6g}")
    if terms is None:
        terms = _auto_terms(ratio, settings)
    if terms < 1:
        raise DomainError(f"terms must be at least 1, got {terms}")

    step = Quaternion.real(s.re) - s
    acc = QuatMatrix.zeros(t.n)
    power = r
    coeff = Quaternion(1.0)
    for n in range(terms):
        acc = acc + power.right_scale(coeff)
        if n + 1 < terms:
            power = power @ r
            coeff = coeff * step
    tail = r_norm * ratio ** terms / (1.0 - ratio)
    return SeriesResult(acc, terms, ratio, tail)


def s_resolvent_blocks(t: QuatMatrix, nodes: np.ndarray, check: bool = False,
                       tolerances: Tolerances = DEFAULT_TOLERANCES) -> tuple[np.ndarray, np.ndarray]:
    """
    Closed-form S-resolvent at a stack of quaternions ``nodes`` of shape (m, 4).

    Returns the complex blocks ``(A, B)``, each of shape (m, n, n), of ``S^-1(s_j, T) = A_j + B_j j``.
    """
    nodes = np.asarray(nodes, dtype=float).reshape(-1, 4)
    n = t.n
    chi_t = t.embedding()
    chi_t2 = chi_t @ chi_t
    eye = np.eye(2 * n)
    re = nodes[:, 0][:, None, None]
    n2 = np.sum(nodes ** 2, axis=-1)[:, None, None]
    q_stack = chi_t2[None] - 2.0 * re * chi_t[None] + n2 * eye[None]

    if check:
        sig = np.linalg.svd(q_stack, compute_uv=False)
        norm = op_norm(t)
        scale = norm * norm + 2.0 * np.abs(nodes[:, 0]) * norm + np.sum(nodes ** 2, axis=-1)
        bad = sig[:, -1] <= tolerances.singular_rtol * np.maximum(sig[:, 0], scale)
        if np.any(bad):
            raise NotInResolventSet(float(np.min(sig[:, -1])), message="a quadrature node lies on the S-spectrum")

    conj = nodes * np.array([1.0, -1.0, -1.0, -1.0])
    rhs = chi_t[None] - scalar_embedding(conj, n)
    try:
        sol = -np.linalg.solve(q_stack, rhs)
    except np.linalg.LinAlgError as e:
        raise NotInResolventSet(0.0, message=f"pencil singular at a quadrature node: {e}") from e
    return sol[:, :n, :n], sol[:, :n, n:]


def accumulate_right(a: np.ndarray, b: np.ndarray, coeffs: np.ndarray) -> QuatMatrix:
    """``sum_j M_j c_j`` for a stack ``M_j = A_j + B_j j`` and quaternions ``c_j`` of shape (m, 4)."""
    c1, c2 = to_pairs(coeffs)
    acc_a = np.einsum("jkl,j->kl", a, c1) - np.einsum("jkl,j->kl", b, np.conj(c2))
    acc_b = np.einsum("jkl,j->kl", a, c2) + np.einsum("jkl,j->kl", b, np.conj(c1))
    return QuatMatrix(acc_a, acc_b)


def blocks_mass(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Frobenius norm of each chi(M_j); an upper bound for the operator norm."""
    return np.sqrt(2.0) * np.sqrt(np.sum(np.abs(a) ** 2, axis=(1, 2)) + np.sum(np.abs(b) ** 2, axis=(1, 2)))


__all__ = [
    "ResolventValue",
    "SeriesResult",
    "s_resolvent",
    "s_resolvent_series",
    "s_left_inverse",
    "equation_residual",
    "resolvent_equation_residual",
    "s_resolvent_laurent",
    "s_resolvent_blocks",
    "accumulate_right",
    "blocks_mass",
]
