from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import StrEnum, auto
from typing import Any, Callable, Optional

from .errors import QuadratureFailure
from .linalg import QuatMatrix, op_norm
from .settings import DEFAULT_QUADRATURE, QuadratureSettings

log = logging.getLogger(__name__)


class RefineAction(StrEnum):
    REFINE = auto()
    ACCEPT = auto()
    ABORT = auto()


@dataclass
class Attempt:
    attempt: int
    nodes: int
    value: Optional[QuatMatrix] = None
    difference: Optional[float] = None
    floor: float = 0.0

    @property
    def norm(self) -> float:
        return op_norm(self.value) if self.value is not None else 0.0


@dataclass
class Advice:
    action: RefineAction
    next_nodes: int = 0
    meta: dict[str, Any] = field(default_factory=dict)


@dataclass
class DoublingPolicy:
    initial: int = 64
    factor: int = 2
    max_nodes: int = 16384

    @classmethod
    def from_settings(cls, settings: QuadratureSettings) -> "DoublingPolicy":
        return cls(settings.initial_nodes, settings.factor, settings.max_nodes)

    def __call__(self, attempt: int) -> int:
        return min(self.initial * self.factor ** max(attempt - 1, 0), self.max_nodes)


class ConvergenceElf:
    """Decides after every quadrature pass whether to accept, refine or give up."""

    def __init__(self, rtol: float = DEFAULT_QUADRATURE.rtol, policy: Optional[DoublingPolicy] = None):
        self.rtol = rtol
        self.policy = policy or DoublingPolicy()

    def advise(self, attempt: Attempt) -> Advice:
        if attempt.difference is not None and (
                attempt.difference < self.rtol * (1.0 + attempt.norm) or attempt.difference <= attempt.floor
        ):
            return Advice(RefineAction.ACCEPT, meta={"reason": "converged"})
        if attempt.nodes >= self.policy.max_nodes:
            return Advice(RefineAction.ABORT, meta={"reason": "max_nodes"})
        return Advice(RefineAction.REFINE, next_nodes=self.policy(attempt.attempt + 1))


@dataclass(frozen=True)
class Refined:
    value: QuatMatrix
    error_estimate: float
    nodes: int
    attempts: int


def refine(
        evaluate: Callable[[int], tuple[QuatMatrix, float]],
        settings: QuadratureSettings = DEFAULT_QUADRATURE,
        elf: Optional[ConvergenceElf] = None,
) -> Refined:
    """
    Repeat ``evaluate(nodes)`` with more nodes until two successive values agree.

    ``evaluate`` returns the value and its rounding floor; the reported error estimate is the
    last successive difference, never below that floor.
    """
    elf = elf or ConvergenceElf(settings.rtol, DoublingPolicy.from_settings(settings))
    nodes = elf.policy(1)
    previous: Optional[QuatMatrix] = None
    n_attempt = 0
    while True:
        n_attempt += 1
        value, floor = evaluate(nodes)
        diff = op_norm(value - previous) if previous is not None else None
        attempt = Attempt(n_attempt, nodes, value, diff, floor)
        advice = elf.advise(attempt)
        log.debug("quadrature pass %d: nodes=%d diff=%s -> %s", n_attempt, nodes, diff, advice.action)

        if advice.action == RefineAction.ACCEPT:
            assert diff is not None
            return Refined(value, max(diff, floor), nodes, n_attempt)
        if advice.action == RefineAction.ABORT:
            raise QuadratureFailure(diff if diff is not None else float("inf"), nodes)
        previous = value
        nodes = advice.next_nodes
