from .session import (
    BasePlugin,
    Case,
    CaseEvent,
    Probe,
    SessionEvent,
    SkipCase,
    Suite,
    SuiteContext,
    SuiteEvent,
    VerificationSession,
)

__all__ = [
    "BasePlugin",
    "Case",
    "CaseEvent",
    "Probe",
    "SessionEvent",
    "SkipCase",
    "Suite",
    "SuiteContext",
    "SuiteEvent",
    "VerificationSession",
]
