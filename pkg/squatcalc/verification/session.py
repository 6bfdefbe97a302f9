from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import StrEnum, auto
from typing import Any, Callable, Iterable, Optional, Protocol, Union, runtime_checkable

from ..core.errors import CalcError
from ..utils.counter_rng import CounterRng

log = logging.getLogger(__name__)


# ==========================================================
# events
# ==========================================================
class CaseEvent(StrEnum):
    ENTER = auto()
    PASS = auto()
    FAIL = auto()
    SKIP = auto()


class SuiteEvent(StrEnum):
    START = auto()
    END = auto()


class SessionEvent(StrEnum):
    START = auto()
    END = auto()


Event = Union[CaseEvent, SuiteEvent, SessionEvent]


# ==========================================================
# cases and suites
# ==========================================================
class SkipCase(Exception):
    """Raised by a probe whose draw falls outside the suite's contract."""


@dataclass(frozen=True)
class Probe:
    label: str
    run: Callable[[], tuple[float, float]]


@dataclass
class Case:
    suite: str
    label: str
    residual: float = 0.0
    bound: float = 0.0
    skipped: Optional[str] = None
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.skipped is None and self.error is None and math.isfinite(self.residual) \
            and self.residual <= self.bound

    @property
    def ratio(self) -> float:
        if self.bound <= 0.0:
            return math.inf if self.residual > 0.0 else 0.0
        return self.residual / self.bound


@dataclass
class SuiteContext:
    seed: int
    negative_control: bool = False

    def rng(self, stream: int = 0) -> CounterRng:
        return CounterRng(self.seed, stream)


@dataclass
class Suite:
    name: str
    contract: str
    fn: Callable[[SuiteContext], Iterable[Probe]]
    skip_on: tuple[type[BaseException], ...] = ()


# ==========================================================
# plugin protocol
# ==========================================================
@runtime_checkable
class VerificationPlugin(Protocol):
    def supported_events(self) -> set[Event]: ...

    def on_any(self, event: Event, payload: Any) -> Any: ...

    def on_case_enter(self, case: Case) -> Any: ...

    def on_case_pass(self, case: Case) -> Any: ...

    def on_case_fail(self, case: Case) -> Any: ...

    def on_case_skip(self, case: Case) -> Any: ...

    def on_suite_start(self, suite: Suite) -> Any: ...

    def on_suite_end(self, suite: Suite) -> Any: ...

    def on_session_start(self, session: "VerificationSession") -> Any: ...

    def on_session_end(self, session: "VerificationSession") -> Any: ...


class BasePlugin:
    def supported_events(self) -> set[Event]:
        return set()


_PREFIX = {CaseEvent: "case", SuiteEvent: "suite", SessionEvent: "session"}


# ==========================================================
# session
# ==========================================================
@dataclass
class VerificationSession:
    name: str = "verify"
    seed: int = 0
    suites: list[Suite] = field(default_factory=list)
    plugins: list[Any] = field(default_factory=list)
    negative_control: bool = False
    stop_on_plugin_error: bool = False
    debug: bool = False

    failures: int = field(default=0, init=False)

    def _guarded(self, plugin: Any, what: str, fn: Callable[[], Any]) -> Any:
        try:
            return fn()
        except Exception as e:
            if self.debug:
                log.exception("[plugin:%s] %s error: %s", plugin.__class__.__name__, what, e)
            if self.stop_on_plugin_error:
                raise
            return None

    def emit_event(self, event: Event, payload: Any) -> None:
        method = f"on_{_PREFIX[type(event)]}_{event.name.lower()}"
        for p in list(self.plugins):
            declared = getattr(p, "supported_events", None)
            if callable(declared):
                se = self._guarded(p, "supported_events", declared)
                if se and event not in se:
                    continue

            fn_any = getattr(p, "on_any", None)
            if callable(fn_any):
                self._guarded(p, "on_any", lambda: fn_any(event, payload))

            fn = getattr(p, method, None)
            if callable(fn):
                self._guarded(p, method, lambda: fn(payload))

    def run_probe(self, suite: Suite, probe: Probe) -> Case:
        case = Case(suite=suite.name, label=probe.label)
        self.emit_event(CaseEvent.ENTER, case)
        try:
            case.residual, case.bound = probe.run()
        except SkipCase as e:
            case.skipped = str(e) or "skipped"
        except Exception as e:
            if suite.skip_on and isinstance(e, suite.skip_on):
                case.skipped = CalcError.of(e).message
            else:
                err = CalcError.of(e)
                case.error = err.message
                case.residual = math.inf
                log.debug("case %s/%s raised %s", suite.name, probe.label, err.category.value)

        if case.skipped is not None:
            self.emit_event(CaseEvent.SKIP, case)
        elif case.passed:
            self.emit_event(CaseEvent.PASS, case)
        else:
            self.failures += 1
            self.emit_event(CaseEvent.FAIL, case)
        return case

    def run_suite(self, suite: Suite) -> list[Case]:
        self.emit_event(SuiteEvent.START, suite)
        ctx = SuiteContext(self.seed, self.negative_control)
        cases = [self.run_probe(suite, probe) for probe in suite.fn(ctx)]
        self.emit_event(SuiteEvent.END, suite)
        return cases

    def run(self) -> bool:
        """Run every suite; True when no case failed."""
        self.failures = 0
        self.emit_event(SessionEvent.START, self)
        try:
            for suite in self.suites:
                self.run_suite(suite)
        finally:
            self.emit_event(SessionEvent.END, self)
        return self.failures == 0
