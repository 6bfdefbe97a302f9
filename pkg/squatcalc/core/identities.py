"""Residuals of the algebraic identities behind the transform ``p = (s - k)^-1``."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .linalg import QuatMatrix, invert, op_norm
from .quaternion import Quaternion, inverse
from .resolvent import s_resolvent
from .settings import DEFAULT_TOLERANCES, Tolerances
from .spectrum import in_resolvent_set


@dataclass(frozen=True)
class TransformResidual:
    value: float
    companion: float

    def __float__(self) -> float:
        return self.value


def transform_identity_residual(
        t: QuatMatrix,
        s: Quaternion,
        k: float,
        tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> TransformResidual:
    """
    ``||S^-1(s,T) - (p I - S^-1(p,A) p^2)||`` and ``||S^-1(s,T) + A S^-1(p,A) p||``
    with ``A = (T - k I)^-1`` and ``p = (s - k)^-1``.
    """
    k = float(k)
    if (s - k).norm2() == 0.0:
        raise DomainError("s must differ from k")
    if not in_resolvent_set(t, k, tolerances):
        raise DomainError(f"k={k} is not in the S-resolvent set")
    if not in_resolvent_set(t, s, tolerances):
        raise DomainError(f"s={s!r} is not in the S-resolvent set")

    a = invert(t.shift(k), tolerances.singular_rtol)
    p = inverse(s - k)
    if not in_resolvent_set(a, p, tolerances):
        raise DomainError("p is not in the S-resolvent set of A")

    kernel_t = s_resolvent(t, s, tolerances).operator
    kernel_a = s_resolvent(a, p, tolerances).operator
    main = kernel_t - (QuatMatrix.scalar(p, t.n) - kernel_a.right_scale(p * p))
    companion = kernel_t + (a @ kernel_a).right_scale(p)
    return TransformResidual(op_norm(main), op_norm(companion))


@dataclass(frozen=True)
class LemmaResidual:
    name: str
    residual: float
    scale: float
    skipped: bool = False


def _degenerate(d: Quaternion, *terms: float) -> bool:
    return abs(d) <= 1e-12 * (1.0 + sum(terms))


def lemma_identities_residual(s: Quaternion, k: float) -> tuple[LemmaResidual, ...]:
    k = float(k)
    if (s - k).norm2() == 0.0:
        raise DomainError("s must differ from k")
    p = inverse(s - k)
    p0, p2, s0 = p.re, p.norm2(), s.re
    pbar = p.conj()
    pbar_inv = inverse(pbar)

    out = []

    lhs, rhs = s0 * p2, k * p2 + p0
    out.append(LemmaResidual("real_part", abs(lhs - rhs), 1.0 + abs(lhs) + abs(k * p2) + abs(p0)))

    lhs = p2 * s.norm2()
    terms = (k * k * p2, 2.0 * p0 * k, 1.0)
    out.append(LemmaResidual("modulus", abs(lhs - sum(terms)), 1.0 + abs(lhs) + sum(abs(v) for v in terms)))

    d = (2.0 * k - 2.0 * s0) + pbar_inv
    if _degenerate(d, abs(k), abs(s0), abs(pbar_inv)):
        out.append(LemmaResidual("inverse_square", 0.0, 1.0, skipped=True))
        out.append(LemmaResidual("vanishing_product", 0.0, 1.0, skipped=True))
        return tuple(out)

    lhs_q = d * pbar / p2
    rhs_q = -inverse(p * p)
    out.append(LemmaResidual("inverse_square", abs(lhs_q - rhs_q), 1.0 + abs(lhs_q) + abs(rhs_q)))

    c = Quaternion.real(s.norm2() - k * k) - k * pbar_inv
    first = s.conj() * d * pbar
    second = c * inverse(d) * d * pbar
    out.append(LemmaResidual("vanishing_product", abs(first + second), 1.0 + abs(first) + abs(second)))
    return tuple(out)
