from __future__ import annotations

from typing import Any, Optional, Set

from .models.residual_book import ResidualBook
from ..verification.session import BasePlugin, Case, CaseEvent, Event, SessionEvent, Suite, SuiteEvent


class ResidualBookPlugin(BasePlugin):
    """
    Turns session events into per-suite residual statistics.

    The book is attached to the session as ``session.residual_book`` so that sinks can find it.
    """

    def __init__(self, book: Optional[ResidualBook] = None):
        self.book = book

    def supported_events(self) -> Set[Event]:
        return {
            SessionEvent.START,
            SuiteEvent.START,
            SuiteEvent.END,
            CaseEvent.PASS,
            CaseEvent.FAIL,
            CaseEvent.SKIP,
        }

    def on_session_start(self, session: Any) -> None:
        if self.book is None:
            self.book = ResidualBook(getattr(session, "name", "verify"))
        setattr(session, "residual_book", self.book)

    def on_suite_start(self, suite: Suite) -> None:
        if self.book is not None:
            self.book.suite_start(suite.name, suite.contract)

    def on_suite_end(self, suite: Suite) -> None:
        if self.book is not None:
            self.book.suite_end(suite.name)

    def _record(self, case: Case) -> None:
        if self.book is not None:
            self.book.record(case)

    on_case_pass = _record
    on_case_fail = _record
    on_case_skip = _record
