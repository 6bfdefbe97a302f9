"""
Command-line front end.

Every command prints one JSON document on stdout (or to ``--output``); diagnostics go to stderr.
Exit codes: 0 ok, 1 residual above contract, 2 bad input, 3 solver failure, 4 contour or
quadrature failure, 5 point on the S-spectrum or no real resolvent point, 6 other numerical
precondition failure, 70 unexpected error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from .core.calculus import f_of_T, f_of_T_inverse_series, f_of_T_unbounded
from .core.errors import CalcError, DomainError
from .core.linalg import QuatMatrix
from .core.quaternion import I, ImaginaryUnit, Quaternion
from .core.resolvent import resolvent_equation_residual, s_resolvent, s_resolvent_laurent, s_resolvent_series
from .core.settings import (
    DEFAULT_INVERSE_SERIES,
    DEFAULT_QUADRATURE,
    ContourSettings,
    InverseSeriesSettings,
    QuadratureSettings,
)
from .core.slice_functions import SliceFunction, function_from_json
from .core.spectrum import s_spectrum
from .decorators import registered_suites
from .fixtures import build_fixture
from .plugins.console_sink_plugin import ConsoleSinkPlugin
from .plugins.models.residual_book import ResidualBook
from .plugins.residual_book_plugin import ResidualBookPlugin
from .utils.codec import dumps
from .verification.session import VerificationSession

log = logging.getLogger(__name__)

SEED_ENV = "SQUATCALC_SEED"
COMMANDS = ("spectrum", "resolve", "calc", "calc-unbounded", "fn-series", "verify", "fixture")


@dataclass
class JobSpec:
    command: str
    input: Optional[str] = None
    fixture: Optional[str] = None
    params: dict[str, str] = field(default_factory=dict)
    function: Optional[str] = None
    tol: float = DEFAULT_QUADRATURE.rtol
    slice_unit: Quaternion = I
    k: Optional[float] = None
    seed: int = 0
    radius: Optional[float] = None
    n_max: int = DEFAULT_INVERSE_SERIES.n_max
    axis_R: float = DEFAULT_INVERSE_SERIES.axis_radius
    nodes: int = DEFAULT_INVERSE_SERIES.nodes
    clamp: bool = DEFAULT_INVERSE_SERIES.clamp
    point: Optional[Quaternion] = None
    form: str = "closed"
    terms: Optional[int] = None
    output: Optional[str] = None
    suites: Optional[list[str]] = None
    negative_control: bool = False
    quiet: bool = False


# ---- parsing helpers ----

def _quaternion(text: str) -> Quaternion:
    try:
        parts = [float(p) for p in text.split(",")]
        return Quaternion.from_array(parts)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected w,x,y,z: {e}") from e


def _param(text: str) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    return key.strip(), value.strip()


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"{SEED_ENV} must be an integer, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="operator JSON file")
    common.add_argument("--fixture", help="builtin operator fixture instead of --input")
    common.add_argument("--param", action="append", type=_param, default=[], metavar="KEY=VALUE",
                        help="fixture parameter, repeatable")
    common.add_argument("--function", help="function spec: a JSON file or inline JSON")
    common.add_argument("--tol", type=float, default=DEFAULT_QUADRATURE.rtol, help="quadrature tolerance")
    common.add_argument("--slice", dest="slice_unit", type=_quaternion, default=I, metavar="W,X,Y,Z",
                        help="imaginary unit of the integration slice")
    common.add_argument("--k", type=float, default=None, help="real point of the resolvent set")
    common.add_argument("--seed", type=int, default=_default_seed())
    common.add_argument("--radius", type=float, default=None, help="fixed circle radius beyond the cluster spread")
    common.add_argument("--n-max", dest="n_max", type=int, default=DEFAULT_INVERSE_SERIES.n_max)
    common.add_argument("--axis-R", dest="axis_R", type=float, default=DEFAULT_INVERSE_SERIES.axis_radius)
    common.add_argument("--nodes", type=int, default=DEFAULT_INVERSE_SERIES.nodes)
    common.add_argument("--no-clamp", dest="clamp", action="store_false",
                        help="integrate over the requested segment even where the expansion diverges")
    common.add_argument("--point", type=_quaternion, default=None, metavar="W,X,Y,Z")
    common.add_argument("--form", choices=("closed", "series", "laurent"), default="closed")
    common.add_argument("--terms", type=int, default=None)
    common.add_argument("--output", help="write JSON here instead of stdout")
    common.add_argument("--log-level", default="WARNING", choices=("DEBUG", "INFO", "WARNING", "ERROR"))

    parser = argparse.ArgumentParser(prog="squatcalc", description="Quaternionic S-functional calculus")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "fixture":
            p.add_argument("name", help="fixture name")
        if name == "verify":
            p.add_argument("--suite", dest="suites", action="append", default=None, help="run only this suite")
            p.add_argument("--quiet", action="store_true", help="no ASCII report on stderr")
            p.add_argument("--negative-control", dest="negative_control", action="store_true",
                           help=argparse.SUPPRESS)
    return parser


def job_from_args(ns: argparse.Namespace) -> JobSpec:
    return JobSpec(
        command=ns.command,
        input=ns.input,
        fixture=getattr(ns, "name", None) if ns.command == "fixture" else ns.fixture,
        params=dict(ns.param),
        function=ns.function,
        tol=ns.tol,
        slice_unit=ns.slice_unit,
        k=ns.k,
        seed=ns.seed,
        radius=ns.radius,
        n_max=ns.n_max,
        axis_R=ns.axis_R,
        nodes=ns.nodes,
        clamp=ns.clamp,
        point=ns.point,
        form=ns.form,
        terms=ns.terms,
        output=ns.output,
        suites=getattr(ns, "suites", None),
        negative_control=getattr(ns, "negative_control", False),
        quiet=getattr(ns, "quiet", False),
    )


# ---- loaders ----

def load_operator(job: JobSpec) -> QuatMatrix:
    if job.input:
        return QuatMatrix.from_json(json.loads(Path(job.input).read_text(encoding="utf-8")))
    if job.fixture:
        params = dict(job.params)
        if job.fixture == "random":
            params.setdefault("seed", str(job.seed))
        return build_fixture(job.fixture, params)
    raise ValueError("an operator is required: --input FILE or --fixture NAME")


def load_function(job: JobSpec) -> SliceFunction:
    if not job.function:
        raise ValueError("a function spec is required: --function FILE|JSON")
    text = job.function
    if not text.lstrip().startswith("{"):
        text = Path(text).read_text(encoding="utf-8")
    return function_from_json(json.loads(text))


def slice_unit(job: JobSpec) -> ImaginaryUnit:
    try:
        return ImaginaryUnit.parse(job.slice_unit)
    except DomainError as e:
        raise ValueError(e.message) from e


# ---- commands ----

def cmd_spectrum(job: JobSpec) -> tuple[Any, int]:
    return s_spectrum(load_operator(job)).to_json(), 0


def cmd_resolve(job: JobSpec) -> tuple[Any, int]:
    if job.point is None:
        raise ValueError("resolve needs --point w,x,y,z")
    t, s = load_operator(job), job.point
    if job.form == "series":
        return {"form": "series", "s": s.to_json(), **s_resolvent_series(t, s, job.terms).to_json()}, 0
    if job.form == "laurent":
        return {"form": "laurent", "s": s.to_json(), **s_resolvent_laurent(t, s, job.terms).to_json()}, 0
    value = s_resolvent(t, s)
    return {"form": "closed", **value.to_json(), "equation_residual": resolvent_equation_residual(t, s)}, 0


def cmd_calc(job: JobSpec) -> tuple[Any, int]:
    result = f_of_T(
        load_operator(job),
        load_function(job),
        slice_unit=slice_unit(job),
        quadrature=QuadratureSettings(rtol=job.tol),
        contour_settings=ContourSettings(radius=job.radius),
    )
    return result.to_json(), 0


def cmd_calc_unbounded(job: JobSpec) -> tuple[Any, int]:
    result = f_of_T_unbounded(
        load_operator(job),
        load_function(job),
        job.k,
        slice_unit=slice_unit(job),
        quadrature=QuadratureSettings(rtol=job.tol),
        contour_settings=ContourSettings(radius=job.radius),
    )
    return result.to_json(), 0


def cmd_fn_series(job: JobSpec) -> tuple[Any, int]:
    settings = InverseSeriesSettings(n_max=job.n_max, axis_radius=job.axis_R, nodes=job.nodes, clamp=job.clamp)
    result = f_of_T_inverse_series(load_operator(job), load_function(job), settings, slice_unit=slice_unit(job))
    return result.to_json(), 0


def cmd_verify(job: JobSpec) -> tuple[Any, int]:
    book = ResidualBook(f"seed={job.seed}")
    session = VerificationSession(
        name="verify",
        seed=job.seed,
        suites=registered_suites(job.suites),
        plugins=[ResidualBookPlugin(book), ConsoleSinkPlugin(print_on_end=not job.quiet)],
        negative_control=job.negative_control,
    )
    ok = session.run()
    if not ok:
        offenders = book.offenders()
        print(f"{len(offenders)} case(s) above contract: {', '.join(offenders[:10])}", file=sys.stderr)
    return book.to_json(), 0 if ok else 1


def cmd_fixture(job: JobSpec) -> tuple[Any, int]:
    return load_operator(job).to_json(), 0


HANDLERS: dict[str, Callable[[JobSpec], tuple[Any, int]]] = {
    "spectrum": cmd_spectrum,
    "resolve": cmd_resolve,
    "calc": cmd_calc,
    "calc-unbounded": cmd_calc_unbounded,
    "fn-series": cmd_fn_series,
    "verify": cmd_verify,
    "fixture": cmd_fixture,
}


def run(job: JobSpec) -> int:
    try:
        payload, code = HANDLERS[job.command](job)
    except Exception as e:
        err = CalcError.of(e)
        log.debug("command %s failed", job.command, exc_info=True)
        print(dumps(err.to_dict()), file=sys.stderr)
        return err.exit_code

    text = dumps(payload)
    if job.output:
        try:
            Path(job.output).write_text(text + "\n", encoding="utf-8")
        except OSError as e:
            err = CalcError.of(e)
            print(dumps(err.to_dict()), file=sys.stderr)
            return err.exit_code
    else:
        print(text)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, ns.log_level),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    return run(job_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
