"""Problem data, ordering cone and the weight parametrization.

The vector problem is::

    maximize P^T x  (w.r.t. the cone C)   s.t.  A x <= b,  x >= 0

with ``P`` of shape ``(n, q)``. Weights are parametrized by
``lam in R^{q-1}`` through ``w(lam) = (lam, 1 - c_tilde @ lam)`` where
``c = (c_tilde, 1)`` is a normalized interior point of ``C``.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import scalarlp
from .errors import (ConeNotPointed, ConeNotSolid, DegenerateInteriorPoint,
                     DimensionMismatch, InteriorPointInvalid)

TOL_INTERIOR = 1e-7


@dataclass(frozen=True)
class Cone:
    """Polyhedral cone ``C = cone{columns of generators}``."""

    generators: np.ndarray

    def __post_init__(self):
        y = np.asarray(self.generators, dtype=float)
        if y.ndim != 2 or y.shape[1] < 1:
            raise DimensionMismatch("cone generators must be a (q, t) matrix with t >= 1")
        if np.any(np.all(y == 0.0, axis=0)):
            raise DimensionMismatch("cone generator columns must be nonzero")
        object.__setattr__(self, "generators", y)

    @classmethod
    def orthant(cls, q: int) -> "Cone":
        return cls(np.eye(q))

    @property
    def q(self) -> int:
        return self.generators.shape[0]

    @property
    def t(self) -> int:
        return self.generators.shape[1]

    def contains_dual(self, w, tol: float = 1e-9) -> bool:
        """``w in C^+``, i.e. ``w @ y >= 0`` for every generator."""
        return bool(np.all(self.generators.T @ np.asarray(w, dtype=float) >= -tol))

    def __neg__(self) -> "Cone":
        return Cone(-self.generators)


@dataclass(frozen=True)
class Problem:
    objective: np.ndarray  # P, shape (n, q)
    constraint_matrix: np.ndarray  # A, shape (m, n)
    rhs: np.ndarray  # b, shape (m,)
    cone: Cone = None
    interior_point: Optional[np.ndarray] = None
    # +1, or -1 when (P, C, c) were negated by normalize_orientation
    orientation: int = 1

    def __post_init__(self):
        p = np.asarray(self.objective, dtype=float)
        a = np.asarray(self.constraint_matrix, dtype=float)
        b = np.asarray(self.rhs, dtype=float).ravel()
        if p.ndim != 2 or a.ndim != 2:
            raise DimensionMismatch("objective and constraint_matrix must be 2-D")
        n, q = p.shape
        m = a.shape[0]
        if q < 2:
            raise DimensionMismatch(f"need at least two objectives, got q={q}")
        if n < 1 or m < 1:
            raise DimensionMismatch("need n >= 1 variables and m >= 1 constraints")
        if a.shape[1] != n:
            raise DimensionMismatch(f"A has {a.shape[1]} columns but P has {n} rows")
        if b.size != m:
            raise DimensionMismatch(f"b has {b.size} entries but A has {m} rows")
        cone = self.cone if self.cone is not None else Cone.orthant(q)
        if not isinstance(cone, Cone):
            cone = Cone(cone)
        if cone.q != q:
            raise DimensionMismatch(f"cone lives in R^{cone.q}, objectives in R^{q}")
        c = self.interior_point
        if c is None:
            c = cone.generators.mean(axis=1)
        c = np.asarray(c, dtype=float).ravel()
        if c.size != q:
            raise DimensionMismatch(f"interior point has {c.size} entries, expected {q}")
        for arr in (p, a, b, c):
            if not np.all(np.isfinite(arr)):
                raise ValueError("problem data must be finite")
        object.__setattr__(self, "objective", p)
        object.__setattr__(self, "constraint_matrix", a)
        object.__setattr__(self, "rhs", b)
        object.__setattr__(self, "cone", cone)
        object.__setattr__(self, "interior_point", c)

    @property
    def n(self) -> int:
        return self.objective.shape[0]

    @property
    def m(self) -> int:
        return self.constraint_matrix.shape[0]

    @property
    def q(self) -> int:
        return self.objective.shape[1]

    @property
    def augmented_matrix(self) -> np.ndarray:
        """``[A I]``."""
        return np.hstack([self.constraint_matrix, np.eye(self.m)])

    @property
    def augmented_objective(self) -> np.ndarray:
        """``[P; 0]``, shape ``(n + m, q)``."""
        return np.vstack([self.objective, np.zeros((self.m, self.q))])

    def image(self, x) -> np.ndarray:
        return self.objective.T @ np.asarray(x, dtype=float)[: self.n]


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)  # list of (exception class, message)

    @property
    def ok(self) -> bool:
        return not self.violations

    def raise_if_failed(self) -> None:
        if self.violations:
            exc, msg = self.violations[0]
            raise exc(msg)


def cone_is_pointed(cone: Cone) -> bool:
    # a line exists iff Y alpha = -Y alpha' has a solution with sum(alpha) = 1
    y = cone.generators
    q, t = y.shape
    a_eq = np.vstack([np.hstack([y, y]), np.hstack([np.ones(t), np.zeros(t)])])
    b_eq = np.concatenate([np.zeros(q), [1.0]])
    out = scalarlp.maximize(np.zeros(2 * t), a_eq=a_eq, b_eq=b_eq)
    return out.status == scalarlp.INFEASIBLE


def interiority_margin(cone: Cone, c) -> float:
    """Largest ``s`` with ``c +- s e_k in C`` for every ``k``; ``-inf`` if ``c`` is not in ``C``."""
    y = cone.generators
    q, t = y.shape
    c = np.asarray(c, dtype=float)
    nblocks = 2 * q
    nvar = nblocks * t + 1
    rows, rhs = [], []
    for k in range(q):
        for blk, sign in ((2 * k, 1.0), (2 * k + 1, -1.0)):
            for r in range(q):
                row = np.zeros(nvar)
                row[blk * t:(blk + 1) * t] = y[r]
                row[-1] = -sign if r == k else 0.0
                rows.append(row)
                rhs.append(c[r])
    cost = np.zeros(nvar)
    cost[-1] = 1.0
    # s is capped so the LP stays bounded even for cones that contain a line
    cap = np.zeros((1, nvar))
    cap[0, -1] = 1.0
    scale = max(1.0, float(np.abs(c).max()))
    out = scalarlp.maximize(cost, a_eq=np.array(rows), b_eq=np.array(rhs), a_ub=cap, b_ub=[scale])
    if out.status != scalarlp.OPTIMAL:
        return -np.inf
    return out.objective_value


def validate_problem(p: Problem, tol_interior: float = TOL_INTERIOR) -> ValidationReport:
    report = ValidationReport()
    n, q = p.objective.shape
    if p.constraint_matrix.shape[1] != n or p.rhs.size != p.m or p.cone.q != q \
            or p.interior_point.size != q:
        report.violations.append((DimensionMismatch, "inconsistent problem dimensions"))
        return report
    if not cone_is_pointed(p.cone):
        report.violations.append((ConeNotPointed, "ordering cone contains a line"))
        return report
    if interiority_margin(p.cone, p.interior_point) > tol_interior:
        return report
    centre = p.cone.generators.mean(axis=1)
    if interiority_margin(p.cone, centre) <= tol_interior:
        report.violations.append((ConeNotSolid, "ordering cone has empty interior"))
    else:
        report.violations.append(
            (InteriorPointInvalid, f"interior point {p.interior_point} is not in int C"))
    return report


def normalize_orientation(p: Problem, tol_interior: float = TOL_INTERIOR) -> Problem:
    """Equivalent problem whose interior point has last coordinate exactly 1.

    A negative last coordinate flips ``(P, C, c)`` to ``(-P, -C, -c)``; this
    leaves the set of maximizers unchanged. The accumulated sign is kept in
    :attr:`Problem.orientation`.
    """
    c = p.interior_point.copy()
    if c[-1] == 0.0:
        c = _shift_off_hyperplane(p.cone, c, tol_interior)
    if c[-1] == 1.0:
        if np.array_equal(c, p.interior_point):
            return p
        return replace(p, interior_point=c)
    if c[-1] < 0:
        return replace(p, objective=-p.objective, cone=-p.cone, interior_point=c / c[-1],
                       orientation=-p.orientation)
    return replace(p, interior_point=c / c[-1])


def _shift_off_hyperplane(cone: Cone, c: np.ndarray, tol_interior: float) -> np.ndarray:
    y = cone.generators
    order = np.argsort(-np.abs(y[-1]), kind="stable")
    for k in order:
        if y[-1, k] == 0.0:
            break
        step = 0.5
        for _ in range(40):
            trial = c + step * y[:, k] / np.linalg.norm(y[:, k]) * max(1.0, np.abs(c).max())
            if trial[-1] != 0.0 and interiority_margin(cone, trial) > tol_interior:
                return trial
            step *= 0.5
    raise DegenerateInteriorPoint("no interior point with nonzero last coordinate found")


@dataclass(frozen=True)
class HalfspaceLambda:
    """``{lam : normal @ lam + offset >= 0}``."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        object.__setattr__(self, "normal", np.asarray(self.normal, dtype=float).ravel())
        object.__setattr__(self, "offset", float(self.offset))

    @classmethod
    def from_reduced_cost(cls, z, c_tilde) -> "HalfspaceLambda":
        """Halfspace ``w(lam) @ z >= 0`` rewritten in ``lam``."""
        z = np.asarray(z, dtype=float)
        return cls(z[:-1] - z[-1] * np.asarray(c_tilde, dtype=float), z[-1])

    def value(self, lam) -> float:
        return float(self.normal @ np.asarray(lam, dtype=float) + self.offset)

    def contains(self, lam, tol: float = 1e-9) -> bool:
        return self.value(lam) >= -tol

    def complement(self) -> "HalfspaceLambda":
        return HalfspaceLambda(-self.normal, -self.offset)

    def to_dict(self) -> dict:
        return {"normal": self.normal.tolist(), "offset": self.offset}


@dataclass(frozen=True)
class ParamMap:
    c_tilde: np.ndarray
    cone_halfspaces: tuple

    @classmethod
    def from_problem(cls, p: Problem) -> "ParamMap":
        c = p.interior_point
        if c[-1] != 1.0:
            raise ValueError("problem must be normalized (interior point with last coordinate 1)")
        c_tilde = c[:-1].copy()
        halfspaces = tuple(HalfspaceLambda.from_reduced_cost(y, c_tilde)
                           for y in p.cone.generators.T)
        return cls(c_tilde, halfspaces)

    @property
    def dim(self) -> int:
        return self.c_tilde.size

    def w(self, lam) -> np.ndarray:
        return param_w(self, lam)

    def contains(self, lam, tol: float = 1e-9) -> bool:
        return all(h.contains(lam, tol) for h in self.cone_halfspaces)


def param_w(pm: ParamMap, lam) -> np.ndarray:
    lam = np.asarray(lam, dtype=float).ravel()
    return np.append(lam, 1.0 - pm.c_tilde @ lam)


def lambda_polytope(pm: ParamMap) -> list:
    return list(pm.cone_halfspaces)


def prepare(p: Problem) -> tuple[Problem, ParamMap]:
    """Validate, normalize and build the parameter map in one go."""
    validate_problem(p).raise_if_failed()
    norm = normalize_orientation(p)
    return norm, ParamMap.from_problem(norm)
