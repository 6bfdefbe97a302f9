from __future__ import annotations

from typing import Callable, Iterable, Optional

from .verification.session import Probe, Suite, SuiteContext

_REGISTRY: dict[str, Suite] = {}


def residual_suite(
        *,
        contract: str,
        name: Optional[str] = None,
        skip_on: tuple[type[BaseException], ...] = (),
        registry: Optional[dict[str, Suite]] = None,
):
    """Register a generator of probes as a verification suite."""

    def deco(fn: Callable[[SuiteContext], Iterable[Probe]]):
        suite = Suite(name=name or fn.__name__, contract=contract, fn=fn, skip_on=tuple(skip_on))
        (registry if registry is not None else _REGISTRY)[suite.name] = suite
        setattr(fn, "suite", suite)
        return fn

    return deco


def registered_suites(names: Optional[Iterable[str]] = None) -> list[Suite]:
    # importing the module registers the built-in suites
    from .verification import suites  # noqa: F401

    if names is None:
        return list(_REGISTRY.values())
    out = []
    for n in names:
        if n not in _REGISTRY:
            raise ValueError(f"unknown suite {n!r}; known: {', '.join(_REGISTRY)}")
        out.append(_REGISTRY[n])
    return out
