"""Named operator fixtures."""
from __future__ import annotations

import math
from typing import Any, Callable, Mapping

import numpy as np

from .core.errors import ContractError
from .core.linalg import QuatMatrix, op_norm
from .core.quaternion import I, Quaternion
from .utils.counter_rng import CounterRng


def diag_i() -> QuatMatrix:
    return QuatMatrix.diag([I])


def real_scalar(t: float = 2.0, n: int = 3) -> QuatMatrix:
    return QuatMatrix.scalar(float(t), int(n))


def random(n: int = 4, seed: int = 0, norm: float = 1.0) -> QuatMatrix:
    """Gaussian quaternion entries from the counter generator, rescaled to the given operator norm."""
    n = int(n)
    if n < 1:
        raise ContractError(f"n must be at least 1, got {n}")
    rng = CounterRng(int(seed), stream=n)
    entries = rng.normals((n, n, 4))
    m = QuatMatrix.from_entries(entries)
    current = op_norm(m)
    return m * (float(norm) / current) if current > 0.0 else m


def derivative(n: int = 8, h: float = 0.1) -> QuatMatrix:
    """
    ``(1/h)(S - S^T) + diag(v_j)`` on ``n`` grid points, ``S`` the forward shift and
    ``v_j = 1 + (cos(theta_j) j + sin(theta_j) k) / 2`` with ``theta_j = 2 pi j / n``.

    The difference part is skew-symmetric, so the S-spectrum runs up the imaginary direction
    with radius of order ``2/h`` while the potential keeps it off the real axis.
    """
    n, h = int(n), float(h)
    if n < 2 or h <= 0.0:
        raise ContractError(f"derivative fixture needs n >= 2 and h > 0, got n={n}, h={h}")
    shift = np.eye(n, k=1)
    diff = (shift - shift.T) / h
    potential = [
        Quaternion(1.0, 0.0, 0.5 * math.cos(2.0 * math.pi * j / n), 0.5 * math.sin(2.0 * math.pi * j / n))
        for j in range(n)
    ]
    return QuatMatrix(diff, np.zeros((n, n))) + QuatMatrix.diag(potential)


FIXTURES: dict[str, Callable[..., QuatMatrix]] = {
    "diag-i": diag_i,
    "real-scalar": real_scalar,
    "random": random,
    "derivative": derivative,
}

_PARAM_TYPES: dict[str, Callable[[str], Any]] = {
    "t": float,
    "n": int,
    "seed": int,
    "norm": float,
    "h": float,
}


def build_fixture(name: str, params: Mapping[str, Any] | None = None) -> QuatMatrix:
    try:
        factory = FIXTURES[name]
    except KeyError:
        raise ValueError(f"unknown fixture {name!r}; known: {', '.join(sorted(FIXTURES))}") from None
    kwargs: dict[str, Any] = {}
    for key, raw in (params or {}).items():
        if key not in _PARAM_TYPES:
            raise ValueError(f"unknown fixture parameter {key!r}")
        kwargs[key] = _PARAM_TYPES[key](raw) if isinstance(raw, str) else raw
    try:
        return factory(**kwargs)
    except TypeError as e:
        raise ValueError(f"fixture {name!r} does not take these parameters: {e}") from e
