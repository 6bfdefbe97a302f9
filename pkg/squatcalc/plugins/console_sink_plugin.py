from __future__ import annotations

import sys
from typing import Any, Set, TextIO

from .models.residual_book import ResidualBook
from ..verification.session import BasePlugin, Event, SessionEvent


class ConsoleSinkPlugin(BasePlugin):
    """Renders the residual book as an ASCII tree when the session ends; stdout stays clean for JSON."""

    def __init__(self, print_on_end: bool = True, limit_per_suite: int = 3, stream: TextIO | None = None):
        self.print_on_end = print_on_end
        self.limit_per_suite = limit_per_suite
        self.stream = stream

    def supported_events(self) -> Set[Event]:
        return {SessionEvent.END}

    def on_session_end(self, session: Any) -> None:
        if not self.print_on_end:
            return
        book: ResidualBook | None = getattr(session, "residual_book", None)
        if not book:
            return
        print(book.render_ascii(limit_per_suite=self.limit_per_suite), file=self.stream or sys.stderr)
