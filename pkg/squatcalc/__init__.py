from .core.calculus import (
    CalculusResult,
    InverseSeriesResult,
    UnboundedCalculusResult,
    f_of_T,
    f_of_T_inverse_series,
    f_of_T_unbounded,
    select_k,
)
from .core.contour import Circle, Contour, build_contour, check_admissible
from .core.errors import (
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
from .core.identities import lemma_identities_residual, transform_identity_residual
from .core.linalg import QuatMatrix, invert, op_norm
from .core.quaternion import I, J, K, ImaginaryUnit, Quaternion, decompose, sample_sphere
from .core.resolvent import s_resolvent, s_resolvent_laurent, s_resolvent_series
from .core.slice_functions import (
    INFINITY,
    Exponential,
    IntrinsicRational,
    Polynomial,
    PowerSeries,
    ResolventShift,
    SliceFunction,
    check_regularity,
    function_from_json,
    phi_inverse,
    phi_transform,
)
from .core.spectrum import SpectralSphere, SpectrumReport, in_resolvent_set, s_spectrum
from .decorators import registered_suites, residual_suite
from .plugins.console_sink_plugin import ConsoleSinkPlugin
from .plugins.models.residual_book import ResidualBook
from .plugins.residual_book_plugin import ResidualBookPlugin
from .verification.session import VerificationSession

__all__ = [
    "Quaternion",
    "ImaginaryUnit",
    "I",
    "J",
    "K",
    "decompose",
    "sample_sphere",
    "QuatMatrix",
    "invert",
    "op_norm",
    "SpectralSphere",
    "SpectrumReport",
    "s_spectrum",
    "in_resolvent_set",
    "s_resolvent",
    "s_resolvent_series",
    "s_resolvent_laurent",
    "SliceFunction",
    "Polynomial",
    "PowerSeries",
    "IntrinsicRational",
    "Exponential",
    "ResolventShift",
    "INFINITY",
    "phi_transform",
    "phi_inverse",
    "check_regularity",
    "function_from_json",
    "Circle",
    "Contour",
    "build_contour",
    "check_admissible",
    "CalculusResult",
    "UnboundedCalculusResult",
    "InverseSeriesResult",
    "f_of_T",
    "f_of_T_unbounded",
    "f_of_T_inverse_series",
    "select_k",
    "transform_identity_residual",
    "lemma_identities_residual",
    "residual_suite",
    "registered_suites",
    "VerificationSession",
    "ResidualBook",
    "ResidualBookPlugin",
    "ConsoleSinkPlugin",
    "CalcError",
    "ErrorCategory",
    "DomainError",
    "ContractError",
    "SolverFailure",
    "NotInvertible",
    "NotInResolventSet",
    "SeriesDivergence",
    "TruncationError",
    "ContourInfeasible",
    "QuadratureFailure",
    "NoRealResolventPoint",
]

try:
    from importlib import metadata as importlib_metadata
    __version__ = importlib_metadata.version("squatcalc")
except importlib_metadata.PackageNotFoundError:
    __version__ = "0.0.0-dev"
