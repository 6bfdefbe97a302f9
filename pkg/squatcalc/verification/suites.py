"""Seeded residual suites run by ``squatcalc verify``."""
from __future__ import annotations

import math
from typing import Iterator

from ..core.errors import DomainError, NotInResolventSet
from ..core.identities import lemma_identities_residual, transform_identity_residual
from ..core.linalg import QuatMatrix, invert_with_certificate, op_norm
from ..core.quaternion import Quaternion, random_quaternion, random_unit
from ..core.resolvent import (
    equation_residual,
    s_left_inverse,
    s_resolvent,
    s_resolvent_laurent,
    s_resolvent_series,
)
from ..core.settings import DEFAULT_TOLERANCES
from ..core.spectrum import pencil_sigmas
from ..decorators import residual_suite
from ..fixtures import random as random_matrix
from ..utils.counter_rng import CounterRng
from .session import Probe, SkipCase, SuiteContext

PAIR_COUNT = 100
LAURENT_COUNT = 50
LEMMA_COUNT = 1000
TRIPLE_COUNT = 100

def _operator(rng: CounterRng, low: float = 0.5, high: float = 3.0) -> QuatMatrix:
    return random_matrix(rng.integer(2, 4), seed=rng.integer(0, 2 ** 31 - 1), norm=rng.uniform(low, high))


def _well_posed(t: QuatMatrix, s: Quaternion) -> bool:
    smin, smax = pencil_sigmas(t, s)
    return smin >= DEFAULT_TOLERANCES.conditioning_floor * smax


def _pairs(ctx: SuiteContext, count: int) -> Iterator[tuple[QuatMatrix, Quaternion]]:
    """(T, s) pairs with the pencil at s bounded away from singular; one fixed stream per seed."""
    rng = ctx.rng(1)
    produced = 0
    while produced < count:
        t = _operator(rng)
        s = random_quaternion(rng, scale=op_norm(t))
        if _well_posed(t, s):
            produced += 1
            yield t, s


@residual_suite(name="resolvent_equation", contract="||S^-1(s,T) s - T S^-1(s,T) - I|| <= 1e-10 (1 + ||T||)")
def resolvent_equation(ctx: SuiteContext) -> Iterator[Probe]:
    for i, (t, s) in enumerate(_pairs(ctx, PAIR_COUNT)):
        def run(t=t, s=s) -> tuple[float, float]:
            kernel = s_resolvent(t, s)
            value = -kernel.operator if ctx.negative_control else kernel.operator
            return equation_residual(t, s, value), 1e-10 * (1.0 + op_norm(t))

        yield Probe(f"pair#{i}", run)


@residual_suite(name="left_inverse", contract="||S(s,T) S^-1(s,T) - I||, ||S^-1(s,T) S(s,T) - I|| <= 1e-10")
def left_inverse(ctx: SuiteContext) -> Iterator[Probe]:
    for i, (t, s) in enumerate(_pairs(ctx, PAIR_COUNT)):
        def run(t=t, s=s) -> tuple[float, float]:
            kernel = s_resolvent(t, s)
            left = s_left_inverse(t, s)
            eye = QuatMatrix.identity(t.n)
            residual = max(op_norm(left @ kernel.operator - eye), op_norm(kernel.operator @ left - eye))
            return residual, 1e-10

        yield Probe(f"pair#{i}", run)


@residual_suite(name="series_vs_closed", contract="power series within its tail bound of the closed form, |s| >= 2||T||")
def series_vs_closed(ctx: SuiteContext) -> Iterator[Probe]:
    rng = ctx.rng(2)
    for i in range(PAIR_COUNT):
        t = _operator(rng)
        u = random_quaternion(rng)
        s = u * (rng.uniform(2.0, 3.0) * op_norm(t) / abs(u))

        def run(t=t, s=s) -> tuple[float, float]:
            series = s_resolvent_series(t, s)
            closed = s_resolvent(t, s).operator
            return op_norm(series.value - closed), series.tail_bound + 1e-12 * (1.0 + op_norm(closed))

        yield Probe(f"case#{i}", run)


@residual_suite(name="laurent", contract="Laurent sum within its tail bound of the closed form when the ratio <= 0.5")
def laurent(ctx: SuiteContext) -> Iterator[Probe]:
    rng = ctx.rng(3)
    for i in range(LAURENT_COUNT):
        t = _operator(rng)
        x0 = rng.uniform(-2.0, 2.0) * op_norm(t)
        target = rng.uniform(0.05, 0.5)
        unit = random_unit(rng)

        def run(t=t, x0=x0, target=target, unit=unit) -> tuple[float, float]:
            r_norm = op_norm(invert_with_certificate(QuatMatrix.scalar(x0, t.n) - t).inverse)
            if r_norm > 1e3:
                raise SkipCase(f"Re[s] too close to the spectrum (||(Re[s] I - T)^-1|| = {r_norm:.3g})")
            s = Quaternion(x0) + unit.u * (target / r_norm)
            series = s_resolvent_laurent(t, s)
            closed = s_resolvent(t, s).operator
            slack = 1e-10 * (1.0 + op_norm(closed))
            return op_norm(series.value - closed), series.tail_bound + slack

        yield Probe(f"case#{i}", run)


@residual_suite(name="lemma", contract="each transform lemma identity <= 1e-11 * scale, |s - k| >= 0.1")
def lemma(ctx: SuiteContext) -> Iterator[Probe]:
    rng = ctx.rng(4)
    for i in range(LEMMA_COUNT):
        while True:
            s = Quaternion(*(rng.uniform(-5.0, 5.0) for _ in range(4)))
            k = rng.uniform(-10.0, 10.0)
            if abs(s - k) >= 0.1:
                break
        for item in lemma_identities_residual(s, k):
            def run(item=item) -> tuple[float, float]:
                if item.skipped:
                    raise SkipCase("degenerate denominator")
                return item.residual, 1e-11 * item.scale

            yield Probe(f"{item.name}#{i}", run)


def _triples(ctx: SuiteContext) -> Iterator[tuple[QuatMatrix, Quaternion, float]]:
    rng = ctx.rng(5)
    produced = 0
    while produced < TRIPLE_COUNT:
        t = _operator(rng, 0.5, 2.0)
        k = float(math.ceil(op_norm(t)) + 1 + rng.integer(0, 2))
        if rng.uniform() < 0.5:
            k = -k
        s = random_quaternion(rng, scale=1.5)
        if abs(s - k) >= 0.1 and _well_posed(t, s):
            produced += 1
            yield t, s, k


@residual_suite(name="transform_identity", contract="||S^-1(s,T) - (p I - S^-1(p,A) p^2)|| <= 1e-9",
                skip_on=(DomainError, NotInResolventSet))
def transform_identity(ctx: SuiteContext) -> Iterator[Probe]:
    for i, (t, s, k) in enumerate(_triples(ctx)):
        def run(t=t, s=s, k=k) -> tuple[float, float]:
            res = transform_identity_residual(t, s, k)
            return res.value, 1e-9

        yield Probe(f"triple#{i}", run)


@residual_suite(name="transform_companion", contract="||S^-1(s,T) + A S^-1(p,A) p|| <= 1e-9",
                skip_on=(DomainError, NotInResolventSet))
def transform_companion(ctx: SuiteContext) -> Iterator[Probe]:
    for i, (t, s, k) in enumerate(_triples(ctx)):
        def run(t=t, s=s, k=k) -> tuple[float, float]:
            res = transform_identity_residual(t, s, k)
            return res.companion, 1e-9

        yield Probe(f"triple#{i}", run)
