"""Small dense two-phase primal simplex with Bland's rule.

Used for the initialization LPs, the redundancy LPs over the parameter
space, the cone checks in :mod:`paravec.model` and by the oracle. Sizes are
tiny, so a full tableau is kept and Bland's smallest-index rule is used for
both the entering and the leaving variable; termination is guaranteed and
runs are bit-reproducible.

Standard-form column layout: structural columns first (a free variable
contributes a ``+`` column followed by a ``-`` column), then one slack
column per inequality row in row order. For an all-``<=`` problem with
nonnegative variables this is exactly ``[A I]``, so :attr:`LpOutcome.basis`
can be used directly as a dictionary basis.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import densela
from .errors import DimensionMismatch, NumericalBreakdown, SingularMatrix

FEAS_TOL = 1e-7
OPT_TOL = 1e-9
PIVOT_TOL = 1e-9

LE, EQ, GE = "<=", "=", ">="
_KINDS = {LE, EQ, GE}

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class ScalarLp:
    """``maximize objective @ x`` subject to per-row relations.

    ``free[j]`` marks variable ``j`` as unbounded below; all others are
    ``>= 0``.
    """

    objective: np.ndarray
    constraint_matrix: np.ndarray
    rhs: np.ndarray
    row_kinds: tuple = ()
    free: tuple = ()

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=float).ravel()
        a = np.asarray(self.constraint_matrix, dtype=float)
        if a.ndim == 1 and a.size == 0:
            a = a.reshape(0, c.size)
        b = np.asarray(self.rhs, dtype=float).ravel()
        if a.ndim != 2:
            raise DimensionMismatch("constraint_matrix must be 2-D")
        m, n = a.shape
        if c.size != n:
            raise DimensionMismatch(f"objective has {c.size} entries, matrix has {n} columns")
        if b.size != m:
            raise DimensionMismatch(f"rhs has {b.size} entries, matrix has {m} rows")
        kinds = tuple(self.row_kinds) if len(self.row_kinds) else (LE,) * m
        if len(kinds) != m or not set(kinds) <= _KINDS:
            raise DimensionMismatch("row_kinds must give one of '<=', '=', '>=' per row")
        free = tuple(bool(f) for f in self.free) if len(self.free) else (False,) * n
        if len(free) != n:
            raise DimensionMismatch("free must have one flag per variable")
        for arr in (c, a, b):
            if not np.all(np.isfinite(arr)):
                raise ValueError("LP data must be finite")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "constraint_matrix", a)
        object.__setattr__(self, "rhs", b)
        object.__setattr__(self, "row_kinds", kinds)
        object.__setattr__(self, "free", free)

    @property
    def shape(self) -> tuple[int, int]:
        return self.constraint_matrix.shape


@dataclass
class LpOutcome:
    status: str
    solution: Optional[np.ndarray] = None
    objective_value: Optional[float] = None
    certificate_ray: Optional[np.ndarray] = None
    basis: Optional[tuple] = None
    iterations: int = 0

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


@dataclass
class _Standard:
    a: np.ndarray  # rows flipped so that b >= 0
    b: np.ndarray
    c: np.ndarray
    col_var: np.ndarray  # original variable of each structural column, -1 for slacks
    col_sign: np.ndarray
    n_struct: int
    initial: list = field(default_factory=list)  # per row: slack column usable as basic, or -1


def _standardize(lp: ScalarLp) -> _Standard:
    a0, b0, c0 = lp.constraint_matrix, lp.rhs, lp.objective
    m, n = a0.shape
    cols, col_var, col_sign, cost = [], [], [], []
    for j in range(n):
        cols.append(a0[:, j])
        col_var.append(j)
        col_sign.append(1.0)
        cost.append(c0[j])
        if lp.free[j]:
            cols.append(-a0[:, j])
            col_var.append(j)
            col_sign.append(-1.0)
            cost.append(-c0[j])
    n_struct = len(cols)
    slack_of_row = [-1] * m
    for i, kind in enumerate(lp.row_kinds):
        if kind == EQ:
            continue
        e = np.zeros(m)
        e[i] = 1.0 if kind == LE else -1.0
        slack_of_row[i] = len(cols)
        cols.append(e)
        col_var.append(-1)
        col_sign.append(0.0)
        cost.append(0.0)
    a = np.column_stack(cols) if cols else np.zeros((m, 0))
    b = b0.copy()
    flip = b < 0
    a[flip] *= -1.0
    b[flip] *= -1.0
    initial = []
    for i in range(m):
        s = slack_of_row[i]
        initial.append(s if s >= 0 and a[i, s] > 0 else -1)
    return _Standard(a, b, np.array(cost, dtype=float), np.array(col_var), np.array(col_sign),
                     n_struct, initial)


def _pivot(t: np.ndarray, r: int, j: int) -> None:
    t[r] /= t[r, j]
    col = t[:, j].copy()
    col[r] = 0.0
    t -= np.outer(col, t[r])


def _run_bland(t, basis, cost, ncols, max_iter):
    """Primal simplex on canonical tableau ``t`` (last column is the rhs).

    Returns ``(status, entering, iterations)``; ``entering`` is the column
    that proved unboundedness.
    """
    it = 0
    while True:
        body = t[:, :ncols]
        reduced = cost[:ncols] - cost[basis] @ body
        reduced[basis] = 0.0
        candidates = np.flatnonzero(reduced > OPT_TOL)
        if candidates.size == 0:
            return OPTIMAL, None, it
        j = int(candidates[0])
        column = body[:, j]
        rows = np.flatnonzero(column > PIVOT_TOL)
        if rows.size == 0:
            return UNBOUNDED, j, it
        ratios = t[rows, -1] / column[rows]
        best = ratios.min()
        tied = rows[ratios <= best + 1e-12 * (1.0 + abs(best))]
        r = int(min(tied, key=lambda i: basis[i]))
        _pivot(t, r, j)
        basis[r] = j
        it += 1
        if it > max_iter:
            raise NumericalBreakdown(f"simplex exceeded {max_iter} pivots")


def _phase_one(std: _Standard, max_iter: int):
    a, b = std.a, std.b
    m, ncols = a.shape
    art_rows = [i for i in range(m) if std.initial[i] < 0]
    n_art = len(art_rows)
    t = np.zeros((m, ncols + n_art + 1))
    t[:, :ncols] = a
    t[:, -1] = b
    basis = list(std.initial)
    for k, i in enumerate(art_rows):
        t[i, ncols + k] = 1.0
        basis[i] = ncols + k
    basis = np.array(basis, dtype=int)
    iterations = 0
    if n_art:
        cost = np.zeros(ncols + n_art)
        cost[ncols:] = -1.0
        _, _, iterations = _run_bland(t, basis, cost, ncols + n_art, max_iter)
        infeas = t[basis >= ncols, -1].sum()
        if infeas > FEAS_TOL * (1.0 + np.abs(b).max(initial=0.0)):
            return None, None, iterations
        keep = np.ones(m, dtype=bool)
        for r in range(m):
            if basis[r] < ncols:
                continue
            row = np.abs(t[r, :ncols])
            if row.max(initial=0.0) > PIVOT_TOL:
                j = int(np.argmax(row))
                _pivot(t, r, j)
                basis[r] = j
            else:
                keep[r] = False
        t = np.column_stack([t[keep, :ncols], t[keep, -1]])
        basis = basis[keep]
    else:
        t = np.column_stack([t[:, :ncols], t[:, -1]])
    return t, basis, iterations


def _to_original(std: _Standard, xs: np.ndarray, n: int) -> np.ndarray:
    x = np.zeros(n)
    for k in range(std.n_struct):
        x[std.col_var[k]] += std.col_sign[k] * xs[k]
    return x


def _max_iter(shape) -> int:
    m, n = shape
    return 50 * (m + n) + 1000


def feasible_basis(lp: ScalarLp) -> Optional[tuple]:
    """A primal feasible basis (standard-form column indices) or ``None``."""
    std = _standardize(lp)
    t, basis, _ = _phase_one(std, _max_iter(std.a.shape))
    if t is None:
        return None
    return tuple(sorted(int(k) for k in basis))


def solve_lp(lp: ScalarLp) -> LpOutcome:
    std = _standardize(lp)
    m, n = lp.shape
    max_iter = _max_iter(std.a.shape)
    t, basis, it1 = _phase_one(std, max_iter)
    if t is None:
        return LpOutcome(INFEASIBLE, iterations=it1)
    ncols = std.a.shape[1]
    status, entering, it2 = _run_bland(t, basis, std.c, ncols, max_iter)
    iterations = it1 + it2
    xs = np.zeros(ncols)
    xs[basis] = t[:, -1]
    # refine the basic values against the original data
    if len(basis):
        rows = _kept_rows(std, t, basis)
        try:
            xs[basis] = densela.solve(std.a[np.ix_(rows, basis)], std.b[rows])
        except SingularMatrix:
            pass
    xs = np.maximum(xs, 0.0)
    x = _to_original(std, xs, n)
    key = tuple(sorted(int(k) for k in basis))
    if status == UNBOUNDED:
        rs = np.zeros(ncols)
        rs[entering] = 1.0
        rs[basis] = -t[:, entering]
        rs = np.maximum(rs, 0.0)
        ray = _to_original(std, rs, n)
        return LpOutcome(UNBOUNDED, solution=x, certificate_ray=ray, basis=key,
                         iterations=iterations)
    return LpOutcome(OPTIMAL, solution=x, objective_value=float(lp.objective @ x), basis=key,
                     iterations=iterations)


def _kept_rows(std: _Standard, t: np.ndarray, basis) -> np.ndarray:
    m = std.a.shape[0]
    if t.shape[0] == m:
        return np.arange(m)
    # some rows were dropped as redundant: pick an independent row subset
    sub = std.a[:, basis]
    chosen: list[int] = []
    for i in range(m):
        trial = sub[chosen + [i]]
        if np.linalg.matrix_rank(trial) == len(chosen) + 1:
            chosen.append(i)
        if len(chosen) == len(basis):
            break
    return np.array(chosen, dtype=int)


def maximize(c, a_ub=None, b_ub=None, a_eq=None, b_eq=None, free: Sequence[bool] = (),
             a_ge=None, b_ge=None) -> LpOutcome:
    """Convenience wrapper assembling a :class:`ScalarLp` from blocks."""
    c = np.asarray(c, dtype=float).ravel()
    n = c.size
    blocks, rhs, kinds = [], [], []
    for mat, vec, kind in ((a_ub, b_ub, LE), (a_eq, b_eq, EQ), (a_ge, b_ge, GE)):
        if mat is None:
            continue
        mat = np.asarray(mat, dtype=float).reshape(-1, n)
        vec = np.asarray(vec, dtype=float).ravel()
        blocks.append(mat)
        rhs.append(vec)
        kinds.extend([kind] * mat.shape[0])
    a = np.vstack(blocks) if blocks else np.zeros((0, n))
    b = np.concatenate(rhs) if rhs else np.zeros(0)
    return solve_lp(ScalarLp(c, a, b, tuple(kinds), tuple(free)))
