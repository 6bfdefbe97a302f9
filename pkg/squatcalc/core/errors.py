from __future__ import annotations

import errno
import json
from enum import Enum
from typing import Any, Optional

import numpy as np


class ErrorCategory(Enum):
    VALIDATION = "validation"
    IO = "io"
    SOLVER = "solver"
    DOMAIN = "domain"
    NOT_INVERTIBLE = "not_invertible"
    NOT_IN_RESOLVENT_SET = "not_in_resolvent_set"
    DIVERGENCE = "divergence"
    TRUNCATION = "truncation"
    CONTRACT = "contract"
    CONTOUR_INFEASIBLE = "contour_infeasible"
    QUADRATURE = "quadrature"
    NO_REAL_RESOLVENT_POINT = "no_real_resolvent_point"
    RESIDUAL = "residual"
    UNKNOWN = "unknown"


class CalcError(RuntimeError):
    category: ErrorCategory = ErrorCategory.UNKNOWN

    def __init__(
            self,
            cause: BaseException | str | None = None,
            message: Optional[str] = None,
            safe_message: Optional[str] = None,
            category: Optional[ErrorCategory] = None,
            extra: Optional[dict[str, Any]] = None,
    ):
        # DomainError("reason") reads naturally at raise sites
        if isinstance(cause, str):
            message, cause = message or cause, None
        self.cause = cause
        if message is None:
            message = (str(cause) or cause.__class__.__name__) if cause is not None else self.__class__.__name__
        self.message = message
        self.category = category or (_classify_exception(cause) if cause is not None else type(self).category)
        self.safe_message = safe_message or _safe_message_by_category(self.category)
        self.extra = extra or {}
        super().__init__(self.message)

    @property
    def exit_code(self) -> int:
        return _exit_code(self.category)

    @classmethod
    def of(cls, e: BaseException) -> "CalcError":
        if isinstance(e, CalcError):
            return e
        return cls(cause=e)

    def to_dict(self) -> dict[str, Any]:
        return {
            "error": self.category.value,
            "message": self.message,
            "detail": self.safe_message,
            **self.extra,
        }


class DomainError(CalcError):
    category = ErrorCategory.DOMAIN


class ContractError(CalcError):
    category = ErrorCategory.CONTRACT


class SolverFailure(CalcError):
    category = ErrorCategory.SOLVER


class NotInvertible(CalcError):
    category = ErrorCategory.NOT_INVERTIBLE

    def __init__(self, sigma_min: float, sigma_max: float, message: Optional[str] = None):
        self.sigma_min = sigma_min
        self.sigma_max = sigma_max
        super().__init__(
            message=message or f"matrix is singular to tolerance (sigma_min={sigma_min:.3e}, sigma_max={sigma_max:.3e})",
            extra={"sigma_min": sigma_min, "sigma_max": sigma_max},
        )


class NotInResolventSet(CalcError):
    category = ErrorCategory.NOT_IN_RESOLVENT_SET

    def __init__(self, sigma_min: float, message: Optional[str] = None):
        self.sigma_min = sigma_min
        super().__init__(
            message=message or f"point lies on the S-spectrum (pencil sigma_min={sigma_min:.3e})",
            extra={"sigma_min": sigma_min},
        )


class SeriesDivergence(CalcError):
    category = ErrorCategory.DIVERGENCE

    def __init__(self, ratio: float, message: Optional[str] = None):
        self.ratio = ratio
        super().__init__(
            message=message or f"series does not converge (ratio={ratio:.6g})",
            extra={"ratio": ratio},
        )


class TruncationError(CalcError):
    category = ErrorCategory.TRUNCATION

    def __init__(self, terms: int, tail: float):
        self.terms = terms
        self.tail = tail
        super().__init__(
            message=f"series not converged after {terms} terms (tail estimate {tail:.3e})",
            extra={"terms": terms, "tail": tail},
        )


class ContourInfeasible(CalcError):
    category = ErrorCategory.CONTOUR_INFEASIBLE


class QuadratureFailure(CalcError):
    category = ErrorCategory.QUADRATURE

    def __init__(self, estimate: float, nodes: int):
        self.estimate = estimate
        self.nodes = nodes
        super().__init__(
            message=f"quadrature did not converge at {nodes} nodes per circle (last difference {estimate:.3e})",
            extra={"error_estimate": estimate, "nodes": nodes},
        )


class NoRealResolventPoint(CalcError):
    category = ErrorCategory.NO_REAL_RESOLVENT_POINT


def _safe_message_by_category(cat: ErrorCategory) -> str:
    messages = {
        ErrorCategory.VALIDATION: "Input data validation failed.",
        ErrorCategory.IO: "File access failed.",
        ErrorCategory.SOLVER: "The eigenvalue or linear solver failed.",
        ErrorCategory.DOMAIN: "Argument outside the domain of the operation.",
        ErrorCategory.NOT_INVERTIBLE: "Operator is not invertible to tolerance.",
        ErrorCategory.NOT_IN_RESOLVENT_SET: "Point belongs to the S-spectrum.",
        ErrorCategory.DIVERGENCE: "Series expansion diverges for these arguments.",
        ErrorCategory.TRUNCATION: "Series truncation did not reach the tolerance.",
        ErrorCategory.CONTRACT: "Operation precondition violated.",
        ErrorCategory.CONTOUR_INFEASIBLE: "No admissible contour for the spectrum and exclusions.",
        ErrorCategory.QUADRATURE: "Contour quadrature did not converge.",
        ErrorCategory.NO_REAL_RESOLVENT_POINT: "No real point of the S-resolvent set was found.",
        ErrorCategory.RESIDUAL: "A verified identity exceeded its contract.",
    }
    return messages.get(cat, "An unexpected error occurred.")


def _exit_code(cat: ErrorCategory) -> int:
    if cat in (ErrorCategory.VALIDATION, ErrorCategory.IO):
        return 2
    if cat == ErrorCategory.SOLVER:
        return 3
    if cat in (ErrorCategory.CONTOUR_INFEASIBLE, ErrorCategory.QUADRATURE):
        return 4
    if cat in (ErrorCategory.NOT_IN_RESOLVENT_SET, ErrorCategory.NO_REAL_RESOLVENT_POINT):
        return 5
    if cat == ErrorCategory.RESIDUAL:
        return 1
    if cat == ErrorCategory.UNKNOWN:
        return 70
    return 6


def _classify_exception(e: BaseException) -> ErrorCategory:
    if isinstance(e, CalcError):
        return e.category

    if isinstance(e, np.linalg.LinAlgError):
        return ErrorCategory.SOLVER

    if isinstance(e, (json.JSONDecodeError, ValueError, TypeError, KeyError, IndexError)):
        return ErrorCategory.VALIDATION

    if isinstance(e, OSError) and getattr(e, "errno", None) in {
        errno.EIO, errno.EROFS, errno.ENOSPC, errno.ENOENT, errno.EACCES, errno.EISDIR
    }:
        return ErrorCategory.IO

    if isinstance(e, ZeroDivisionError):
        return ErrorCategory.DOMAIN

    return ErrorCategory.UNKNOWN
