"""Defining halfspaces of optimality regions in the parameter space."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import scalarlp
from .dictionary import Dictionary, optimality_halfspaces
from .model import HalfspaceLambda, ParamMap

TOL_DEF = 1e-7


@dataclass(frozen=True)
class DefiningSetResult:
    defining: tuple
    redundant: tuple
    region_empty_interior: bool = False


def _halfspace_rows(halfspaces: Sequence[HalfspaceLambda], dim: int):
    if not halfspaces:
        return np.zeros((0, dim)), np.zeros(0)
    a = np.array([h.normal for h in halfspaces]).reshape(len(halfspaces), dim)
    b = np.array([-h.offset for h in halfspaces])
    return a, b


def max_over(objective: HalfspaceLambda, constraints: Sequence[HalfspaceLambda]):
    """Maximize ``objective.value(lam)`` subject to every constraint; returns an LpOutcome
    whose ``objective_value`` includes the offset."""
    dim = objective.normal.size
    a_ge, b_ge = _halfspace_rows(constraints, dim)
    out = scalarlp.maximize(objective.normal, a_ge=a_ge, b_ge=b_ge, free=(True,) * dim)
    if out.status == scalarlp.OPTIMAL:
        out.objective_value += objective.offset
    return out


def defining_indices(candidates: dict, domain: Sequence[HalfspaceLambda],
                     tol_def: float = TOL_DEF) -> DefiningSetResult:
    """Sequential redundancy test over ``candidates`` (index -> halfspace).

    Candidates are tested from the largest index down, so among parallel
    duplicates the smallest index is the one kept.

    A candidate is redundant when it cannot be violated by more than
    ``tol_def`` on the remaining candidates (found-redundant ones excluded)
    intersected with ``domain``.
    """
    order = sorted(candidates, reverse=True)
    redundant: list = []
    defining: list = []
    empty = False
    for j in order:
        h = candidates[j]
        if not np.any(h.normal) and h.offset >= 0:
            redundant.append(j)
            continue
        others = [candidates[k] for k in order if k != j and k not in redundant]
        out = max_over(h.complement(), list(others) + list(domain))
        if out.status == scalarlp.UNBOUNDED:
            defining.append(j)
        elif out.status == scalarlp.INFEASIBLE:
            empty = True
            redundant.append(j)
        elif out.objective_value <= tol_def:
            redundant.append(j)
        else:
            defining.append(j)
    return DefiningSetResult(tuple(sorted(defining)), tuple(sorted(redundant)), empty)


def defining_set(d: Dictionary, pm: ParamMap, tol_def: float = TOL_DEF) -> DefiningSetResult:
    return defining_indices(optimality_halfspaces(d, pm), pm.cone_halfspaces, tol_def)


def region_interior_witness(halfspaces: Sequence[HalfspaceLambda],
                            loose: Sequence[HalfspaceLambda] = (),
                            tol_def: float = TOL_DEF) -> Optional[np.ndarray]:
    """Chebyshev-style centre: maximize ``s`` with ``a @ lam + beta >= s * |a|`` for each
    halfspace in ``halfspaces`` (``loose`` ones only need ``>= 0``).

    Returns the maximizing ``lam`` when ``s* > tol_def``, otherwise ``None``.
    """
    strict = [h for h in halfspaces]
    allh = strict + list(loose)
    if not allh:
        raise ValueError("need at least one halfspace")
    dim = allh[0].normal.size
    rows, rhs = [], []
    for h in strict:
        nrm = float(np.linalg.norm(h.normal))
        if nrm == 0.0:
            if h.offset <= tol_def:
                return None
            continue
        rows.append(np.append(h.normal, -nrm))
        rhs.append(-h.offset)
    for h in loose:
        if not np.any(h.normal):
            if h.offset < -tol_def:
                return None
            continue
        rows.append(np.append(h.normal, 0.0))
        rhs.append(-h.offset)
    cost = np.zeros(dim + 1)
    cost[-1] = 1.0
    cap = np.zeros((1, dim + 1))
    cap[0, -1] = 1.0
    free = (True,) * dim + (False,)
    a_ge = np.array(rows).reshape(len(rows), dim + 1)
    out = scalarlp.maximize(cost, a_ge=a_ge, b_ge=rhs, a_ub=cap, b_ub=[1.0], free=free)
    if out.status != scalarlp.OPTIMAL or out.objective_value <= tol_def:
        return None
    return out.solution[:dim]


def cell_witness(d: Dictionary, pm: ParamMap, tol_def: float = TOL_DEF) -> Optional[np.ndarray]:
    """A point of ``Lambda^D`` lying in the interior of ``Lambda``, or ``None``."""
    region = list(optimality_halfspaces(d, pm).values())
    return region_interior_witness(pm.cone_halfspaces, loose=region, tol_def=tol_def)
