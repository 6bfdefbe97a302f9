import errno
import json

import numpy as np
import pytest

from squatcalc.core.errors import (
    CalcError,
    ContourInfeasible,
    ContractError,
    DomainError,
    ErrorCategory,
    NoRealResolventPoint,
    NotInResolventSet,
    NotInvertible,
    QuadratureFailure,
    SeriesDivergence,
    SolverFailure,
    TruncationError,
)


@pytest.mark.parametrize(
    "err,code",
    [
        (CalcError(category=ErrorCategory.VALIDATION), 2),
        (CalcError(category=ErrorCategory.IO), 2),
        (SolverFailure("eig"), 3),
        (ContourInfeasible("overlap"), 4),
        (QuadratureFailure(1e-3, 16384), 4),
        (NotInResolventSet(0.0), 5),
        (NoRealResolventPoint("none"), 5),
        (CalcError(category=ErrorCategory.RESIDUAL), 1),
        (DomainError("bad"), 6),
        (ContractError("bad"), 6),
        (NotInvertible(0.0, 1.0), 6),
        (SeriesDivergence(1.2), 6),
        (TruncationError(500, 1e-3), 6),
        (CalcError("boom"), 70),
    ],
)
def test_exit_codes(err, code):
    assert err.exit_code == code


@pytest.mark.parametrize(
    "exc,category",
    [
        (ValueError("x"), ErrorCategory.VALIDATION),
        (KeyError("x"), ErrorCategory.VALIDATION),
        (json.JSONDecodeError("x", "", 0), ErrorCategory.VALIDATION),
        (np.linalg.LinAlgError("x"), ErrorCategory.SOLVER),
        (FileNotFoundError(errno.ENOENT, "missing"), ErrorCategory.IO),
        (ZeroDivisionError(), ErrorCategory.DOMAIN),
        (RuntimeError("x"), ErrorCategory.UNKNOWN),
    ],
)
def test_classification_of_foreign_exceptions(exc, category):
    err = CalcError.of(exc)
    assert err.category == category
    assert err.cause is exc


def test_of_keeps_calc_errors():
    e = DomainError("outside")
    assert CalcError.of(e) is e
    assert e.message == "outside"
    assert e.cause is None


def test_to_dict_carries_extra_fields():
    d = QuadratureFailure(2.5e-4, 1024).to_dict()
    assert d["error"] == "quadrature"
    assert d["nodes"] == 1024
    assert d["error_estimate"] == 2.5e-4
    assert d["detail"] == "Contour quadrature did not converge."
    assert "1024" in d["message"]


def test_safe_message_override():
    e = CalcError(ValueError("raw"), safe_message="clean")
    assert e.to_dict()["detail"] == "clean"
    assert e.message == "raw"
