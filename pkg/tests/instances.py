"""Worked examples shared by the test modules (indices here are 0-based)."""
from __future__ import annotations

import numpy as np

from paravec import Cone, Problem


def ex51() -> Problem:
    # maximize (x1, x2 - x3, x3) s.t. x1 + x2 <= 5, x1 + 2x2 - x3 <= 9
    p = np.array([[1.0, 0, 0], [0, 1, 0], [0, -1, 1]])
    a = np.array([[1.0, 1, 0], [1, 2, -1]])
    return Problem(p, a, np.array([5.0, 9]), Cone.orthant(3), np.ones(3))


def ex52() -> Problem:
    # maximize (x1 - x2, x3 - x4) s.t. x1 - x2 + x3 - x4 <= 1
    p = np.array([[1.0, 0], [-1, 0], [0, 1], [0, -1]])
    a = np.array([[1.0, -1, 1, -1]])
    return Problem(p, a, np.array([1.0]), Cone.orthant(2), np.ones(2))


def ex61() -> Problem:
    # maximize (3x1 + x2, 3x1 - x2) s.t. x1 + x2 <= 4, x1 - x2 <= 4, x3 <= 4
    p = np.array([[3.0, 3], [1, -1], [0, 0]])
    a = np.array([[1.0, 1, 0], [1, -1, 0], [0, 0, 1]])
    return Problem(p, a, np.array([4.0, 4, 4]), Cone.orthant(2), np.ones(2))


def ex62() -> Problem:
    # maximize (-x1 - x3, -x2 - 2x3) s.t. -x1 - x2 - 3x3 <= -1
    p = np.array([[-1.0, 0], [0, -1], [-1, -2]])
    a = np.array([[-1.0, -1, -3]])
    return Problem(p, a, np.array([-1.0]), Cone.orthant(2), np.ones(2))


def no_solution() -> Problem:
    # x1 is unbounded and raises both objectives: every interior weight is unbounded
    p = np.array([[1.0, 1], [0, 0]])
    a = np.array([[-1.0, 1]])
    return Problem(p, a, np.array([1.0]))


def infeasible() -> Problem:
    p = np.array([[1.0, 0], [0, 1]])
    a = np.array([[1.0, 1]])
    return Problem(p, a, np.array([-1.0]))


def paper_basis(*indices) -> tuple:
    """Convert 1-based paper indices to 0-based sorted basis keys."""
    return tuple(sorted(i - 1 for i in indices))


def as_set(rows, decimals: int = 7) -> set:
    return {tuple(np.round(np.asarray(r, dtype=float), decimals) + 0.0) for r in rows}
