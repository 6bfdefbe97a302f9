from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

from ...verification.session import Case


class SuiteStatus(str, Enum):
    RUNNING = "running"
    PASSED = "passed"
    FAILED = "failed"


@dataclass
class Offender:
    label: str
    residual: float
    bound: float
    error: Optional[str] = None


@dataclass
class SuiteGroup:
    """Everything recorded for one suite."""

    name: str
    contract: str = ""
    status: SuiteStatus = SuiteStatus.RUNNING
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    max_residual: float = 0.0
    worst_ratio: float = 0.0
    offenders: List[Offender] = field(default_factory=list)

    @property
    def case_count(self) -> int:
        return self.passed + self.failed + self.skipped

    @property
    def skip_rate(self) -> float:
        return self.skipped / self.case_count if self.case_count else 0.0

    def record(self, case: Case) -> None:
        if case.skipped is not None:
            self.skipped += 1
            return
        if math.isfinite(case.residual):
            self.max_residual = max(self.max_residual, case.residual)
        self.worst_ratio = max(self.worst_ratio, case.ratio)
        if case.passed:
            self.passed += 1
        else:
            self.failed += 1
            self.offenders.append(Offender(case.label, case.residual, case.bound, case.error))

    def close(self) -> None:
        self.status = SuiteStatus.FAILED if self.failed else SuiteStatus.PASSED

    def render_ascii(self, limit: int = 3, child_prefix: str = "┃   ") -> str:
        mark = "ok" if self.status == SuiteStatus.PASSED else "FAIL" if self.status == SuiteStatus.FAILED else "..."
        lines = [
            f"┣━━ {self.name}  [{mark}]  "
            f"cases={self.case_count} passed={self.passed} failed={self.failed} skipped={self.skipped}  "
            f"max_residual={self.max_residual:.3e} worst_ratio={self.worst_ratio:.3g}"
        ]
        shown = self.offenders[:limit]
        for i, o in enumerate(shown):
            connector = "┗━━" if i == len(shown) - 1 and len(self.offenders) <= limit else "┣━━"
            detail = f"err={o.error}" if o.error else f"residual={o.residual:.3e} > bound={o.bound:.3e}"
            lines.append(f"{child_prefix}{connector} {o.label}  {detail}")
        if len(self.offenders) > limit:
            lines.append(f"{child_prefix}┗━━ … and {len(self.offenders) - limit} more")
        return "\n".join(lines)

    def to_json(self) -> Dict[str, Any]:
        return {
            "contract": self.contract,
            "status": self.status.value,
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "max_residual": self.max_residual,
            "worst_ratio": self.worst_ratio,
            "offenders": [o.label for o in self.offenders],
        }


class ResidualBook:
    """Collector of per-suite residual statistics."""

    def __init__(self, title: str):
        self.title = title
        self.groups: Dict[str, SuiteGroup] = {}

    def suite_start(self, name: str, contract: str = "") -> SuiteGroup:
        group = self.groups.get(name)
        if group is None:
            group = self.groups[name] = SuiteGroup(name, contract)
        return group

    def record(self, case: Case) -> None:
        self.suite_start(case.suite).record(case)

    def suite_end(self, name: str) -> None:
        if name in self.groups:
            self.groups[name].close()

    @property
    def all_passed(self) -> bool:
        return all(g.failed == 0 for g in self.groups.values())

    def offenders(self) -> List[str]:
        return [f"{g.name}/{o.label}" for g in self.groups.values() for o in g.offenders]

    def render_ascii(self, limit_per_suite: int = 3) -> str:
        lines = [f"[squatcalc] verification: {self.title}"]
        groups = list(self.groups.values())
        for i, g in enumerate(groups):
            last = i == len(groups) - 1
            block = g.render_ascii(limit=limit_per_suite, child_prefix="    " if last else "┃   ")
            if last:
                block = block.replace("┣━━", "┗━━", 1)
            lines.append(block)
        return "\n".join(lines)

    def to_json(self) -> Dict[str, Any]:
        return {
            "title": self.title,
            "passed": self.all_passed,
            "suites": {name: g.to_json() for name, g in self.groups.items()},
        }
