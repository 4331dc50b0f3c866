"""Random test instances: unstructured ones and ones built to be degenerate."""
from __future__ import annotations

import numpy as np

from .model import Problem

SCALE = 10.0  # standard deviation of A and P entries (variance 100)
B_HIGH = 10.0


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def nondegenerate(q: int, n: int, m: int, seed=None) -> Problem:
    """``A``, ``P`` entries from N(0, 100), ``b`` uniform on [0, 10]."""
    rng = _rng(seed)
    a = rng.normal(0.0, SCALE, size=(m, n))
    p = rng.normal(0.0, SCALE, size=(n, q))
    b = rng.uniform(0.0, B_HIGH, size=m)
    return Problem(p, a, b)


def degenerate(q: int, n: int, m: int, seed=None) -> Problem:
    """Sparse nonnegative ``b``; objectives ``(f, -f, e, g)`` with ``e`` one-hot and ``g`` half zero.

    Objectives beyond the fourth are filled with N(0, 100) entries.
    """
    if q < 2:
        raise ValueError("need q >= 2")
    rng = _rng(seed)
    a = rng.normal(0.0, SCALE, size=(m, n))
    b = np.zeros(m)
    k = int(rng.integers(0, m // 2 + 1))
    if k:
        idx = rng.choice(m, size=k, replace=False)
        b[idx] = rng.uniform(0.0, B_HIGH, size=k)
    p = np.zeros((n, q))
    p[:, 0] = rng.normal(0.0, SCALE, size=n)
    p[:, 1] = -p[:, 0]
    if q >= 3:
        p[int(rng.integers(0, n)), 2] = rng.normal(0.0, SCALE)
    if q >= 4:
        nz = int(rng.integers(0, n // 2 + 1))
        if nz:
            idx = rng.choice(n, size=nz, replace=False)
            p[idx, 3] = rng.normal(0.0, SCALE, size=nz)
    if q >= 5:
        p[:, 4:] = rng.normal(0.0, SCALE, size=(n, q - 4))
    return Problem(p, a, b)


def generate(kind: str, q: int, n: int, m: int, seed=None) -> Problem:
    if kind == "nondegenerate":
        return nondegenerate(q, n, m, seed)
    if kind == "degenerate":
        return degenerate(q, n, m, seed)
    raise ValueError(f"unknown instance kind {kind!r}")
