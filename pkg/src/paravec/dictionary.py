"""Simplex dictionaries of the parametrized weighted-sum problem.

Variables are indexed ``0 .. n+m-1`` over the columns of ``[A I]``: the
first ``n`` are structural, the last ``m`` are slacks. A dictionary is
identified by its sorted basis tuple.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import densela
from .errors import PreconditionViolated, SingularBasis, SingularMatrix
from .model import HalfspaceLambda, ParamMap, Problem

TOL_PIVOT = 1e-9
TOL_FEAS = 1e-7


@dataclass(frozen=True)
class Dictionary:
    basis: tuple
    nonbasis: tuple
    binv_b: np.ndarray  # (m,), row i belongs to basis[i]
    binv_n: np.ndarray  # (m, n), column k belongs to nonbasis[k]
    reduced_costs: np.ndarray  # Z_N, (n, k) with k the number of weight coordinates
    xi_coeffs: np.ndarray  # P_B^T B^{-1} b
    n_struct: int

    @property
    def key(self) -> tuple:
        return self.basis

    def is_primal_feasible(self, tol: float = TOL_FEAS) -> bool:
        return bool(np.all(self.binv_b >= -tol))

    def column_of(self, j: int) -> int:
        try:
            return self.nonbasis.index(j)
        except ValueError:
            raise PreconditionViolated(f"variable {j} is not nonbasic") from None

    def row_of(self, i: int) -> int:
        try:
            return self.basis.index(i)
        except ValueError:
            raise PreconditionViolated(f"variable {i} is not basic") from None

    def reduced_cost(self, j: int) -> np.ndarray:
        """``Z_N^T e^j``."""
        return self.reduced_costs[self.column_of(j)]

    def full_solution(self) -> np.ndarray:
        x = np.zeros(self.n_struct + len(self.basis))
        x[list(self.basis)] = self.binv_b
        return x

    def __repr__(self) -> str:
        return f"Dictionary(basis={self.basis})"


def materialize_arrays(aug_matrix: np.ndarray, rhs: np.ndarray, aug_objective: np.ndarray,
                       basis, n_struct: int) -> Dictionary:
    """Build a dictionary from ``[A I]``, ``b`` and the per-variable objective rows."""
    total = aug_matrix.shape[1]
    m = aug_matrix.shape[0]
    basis = tuple(sorted(int(i) for i in basis))
    if len(basis) != m or len(set(basis)) != m or min(basis) < 0 or max(basis) >= total:
        raise PreconditionViolated(f"basis {basis} is not a set of {m} column indices")
    in_basis = set(basis)
    nonbasis = tuple(j for j in range(total) if j not in in_basis)
    try:
        lu = densela.lu_factorize(aug_matrix[:, basis])
    except SingularMatrix as exc:
        raise SingularBasis(f"basis {basis} is singular: {exc}") from None
    binv_b = densela.lu_solve(lu, rhs)
    binv_n = densela.lu_solve(lu, aug_matrix[:, nonbasis])
    p_b = aug_objective[list(basis)]
    p_n = aug_objective[list(nonbasis)]
    z_n = binv_n.T @ p_b - p_n
    xi = p_b.T @ binv_b
    return Dictionary(basis, nonbasis, binv_b, binv_n, z_n, xi, n_struct)


def materialize(p: Problem, basis) -> Dictionary:
    return materialize_arrays(p.augmented_matrix, p.rhs, p.augmented_objective, basis, p.n)


def basic_solution(d: Dictionary) -> np.ndarray:
    """Structural part of the basic solution (``x_N = 0``)."""
    return d.full_solution()[: d.n_struct]


def optimality_halfspace(d: Dictionary, j: int, pm: ParamMap) -> HalfspaceLambda:
    return HalfspaceLambda.from_reduced_cost(d.reduced_cost(j), pm.c_tilde)


def optimality_halfspaces(d: Dictionary, pm: ParamMap) -> dict:
    return {j: optimality_halfspace(d, j, pm) for j in d.nonbasis}


def leaving_variable(d: Dictionary, j: int, tol_pivot: float = TOL_PIVOT) -> Optional[int]:
    """Minimum-ratio leaving variable for entering ``j``; ``None`` if the column is ``<= 0``.

    Ties go to the smallest basic variable index.
    """
    col = d.binv_n[:, d.column_of(j)]
    rows = np.flatnonzero(col > tol_pivot)
    if rows.size == 0:
        return None
    ratios = d.binv_b[rows] / col[rows]
    best = ratios.min()
    tied = rows[ratios <= best + 1e-12 * (1.0 + abs(best))]
    return min(d.basis[r] for r in tied)


def pivot(p: Problem, d: Dictionary, j: int, i: int, tol_pivot: float = TOL_PIVOT,
          aug_objective: Optional[np.ndarray] = None) -> Dictionary:
    """Exchange entering ``j`` and leaving ``i`` and rematerialize."""
    entry = d.binv_n[d.row_of(i), d.column_of(j)]
    if entry <= tol_pivot:
        raise PreconditionViolated(f"pivot entry ({i}, {j}) = {entry:.3e} is not positive")
    new_basis = (set(d.basis) - {i}) | {j}
    obj = p.augmented_objective if aug_objective is None else aug_objective
    return materialize_arrays(p.augmented_matrix, p.rhs, obj, new_basis, p.n)


@dataclass(frozen=True)
class DirectionMaximizer:
    direction: np.ndarray  # (n + m,), slacks included
    image: np.ndarray  # P^T x^h
    entering: int
    basis: tuple

    @property
    def structural(self) -> np.ndarray:
        return self.direction[: self.direction.size - len(self.basis)]


def extract_direction(d: Dictionary, j: int, tol_pivot: float = TOL_PIVOT) -> DirectionMaximizer:
    """Unbounded edge ``x_B = -B^{-1}N e^j``, ``x_N = e^j`` with image ``-Z_N^T e^j``."""
    k = d.column_of(j)
    col = d.binv_n[:, k]
    if np.any(col > tol_pivot):
        raise PreconditionViolated(f"column of entering variable {j} has a positive entry")
    x = np.zeros(d.n_struct + len(d.basis))
    x[j] = 1.0
    x[list(d.basis)] = np.maximum(-col, 0.0)
    return DirectionMaximizer(x, -d.reduced_costs[k].copy(), j, d.basis)
