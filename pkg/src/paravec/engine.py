"""Parametric simplex driver.

The driver walks from dictionary to dictionary across the parameter set,
keeping a boundary set (dictionaries whose neighbours are not yet known), a
visited set, and per-dictionary explored pivots so that no pivot is ever
repeated. Every point it records is an optimal basic solution for some
interior weight; every direction comes from an entering column without a
leaving row.
"""
from __future__ import annotations

import heapq
import logging
import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import scalarlp
from .dictionary import (Dictionary, DirectionMaximizer, basic_solution, extract_direction,
                         leaving_variable, materialize, materialize_arrays,
                         optimality_halfspace, pivot)
from .errors import (InfeasibleProblem, NoSolution, NumericalBreakdown, PreconditionViolated,
                     ScalarUnbounded)
from .model import HalfspaceLambda, ParamMap, Problem, param_w, prepare
from .regions import cell_witness, defining_indices, defining_set, region_interior_witness
from .tolerances import Tolerances, default_tolerances

log = logging.getLogger(__name__)

SOLVED = "solved"
INFEASIBLE = "infeasible"
NO_SOLUTION = "no_solution"


@dataclass
class EngineOptions:
    dedupe_images: bool = False
    filter_generators: bool = False
    certify: bool = True
    max_dictionaries: Optional[int] = None
    tol: Tolerances = field(default_factory=default_tolerances)


@dataclass
class Cell:
    basis: tuple
    defining: tuple
    halfspaces: list  # defining halfspaces of Lambda^D followed by those of Lambda
    point_index: Optional[int]
    witness: Optional[np.ndarray] = None


@dataclass
class UnboundedCut:
    basis: tuple
    entering: int
    halfspace: HalfspaceLambda


@dataclass
class Solution:
    """Finite supremizer plus the parameter-space partition that produced it.

    Images and cone generators are in the orientation of the problem as
    given; cells, cuts and ``lambda_halfspaces`` live in the normalized
    parameter space described by ``interior_point`` and ``orientation``.
    """

    status: str
    points: np.ndarray
    directions: np.ndarray
    point_images: np.ndarray
    direction_images: np.ndarray
    cone_generators: np.ndarray
    interior_point: np.ndarray
    orientation: int = 1
    cells: list = field(default_factory=list)
    unbounded_cuts: list = field(default_factory=list)
    lambda_halfspaces: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def bounded(self) -> bool:
        return len(self.directions) == 0

    @property
    def q(self) -> int:
        return self.cone_generators.shape[0]

    @property
    def lower_image_rays(self) -> np.ndarray:
        rays = [np.asarray(self.direction_images).reshape(-1, self.q), -self.cone_generators.T]
        return np.vstack(rays)

    @property
    def lower_image_vrep(self) -> tuple:
        return np.asarray(self.point_images).reshape(-1, self.q), self.lower_image_rays

    def param_map(self) -> ParamMap:
        c_tilde = self.interior_point[:-1]
        return ParamMap(c_tilde, tuple(self.lambda_halfspaces))

    def weight(self, lam) -> np.ndarray:
        """Weight vector for ``lam`` in the orientation of the input problem."""
        return self.orientation * param_w(self.param_map(), lam)


@dataclass
class InitResult:
    dictionary: Dictionary
    method: str
    weight: Optional[np.ndarray] = None
    extra: dict = field(default_factory=dict)


@dataclass
class EngineState:
    boundary: dict = field(default_factory=dict)  # key -> [Dictionary, J^D, E^D]
    visited: dict = field(default_factory=dict)  # key -> (Dictionary, J^D)
    heap: list = field(default_factory=list)
    points: list = field(default_factory=list)
    point_images: list = field(default_factory=list)
    point_bases: list = field(default_factory=list)
    directions: list = field(default_factory=list)
    direction_images: list = field(default_factory=list)
    unbounded_cuts: list = field(default_factory=list)
    cell_point: dict = field(default_factory=dict)
    pivot_log: list = field(default_factory=list)


# -- insertion helpers -------------------------------------------------------

def _l1_normalized(v: np.ndarray) -> np.ndarray:
    s = np.abs(v).sum()
    return v / s if s > 0 else v


def dedupe_image_insert(state: EngineState, x, image, kind: str = "point",
                        tol_img: float = 1e-7) -> bool:
    """Insert ``x`` unless an element with the same image is already recorded."""
    image = np.asarray(image, dtype=float)
    if kind == "point":
        existing = state.point_images
        probe = image
    else:
        existing = [_l1_normalized(v) for v in state.direction_images]
        probe = _l1_normalized(image)
    for v in existing:
        if np.all(np.abs(np.asarray(v) - probe) <= tol_img):
            return False
    if kind == "point":
        state.points.append(np.asarray(x, dtype=float))
        state.point_images.append(image)
    else:
        state.directions.append(np.asarray(x, dtype=float))
        state.direction_images.append(image)
    return True


def _find_point(state: EngineState, x, image, tol) -> Optional[int]:
    for k, (y, v) in enumerate(zip(state.points, state.point_images)):
        if np.all(np.abs(y - x) <= tol.image * (1.0 + np.abs(x).max(initial=0.0))):
            return k
    return None


def _record_point(state: EngineState, d: Dictionary, p_orig: Problem, opts: EngineOptions) -> None:
    x = basic_solution(d)
    image = p_orig.image(x)
    k = _find_point(state, x, image, opts.tol)
    if k is None and opts.dedupe_images:
        for idx, v in enumerate(state.point_images):
            if np.all(np.abs(v - image) <= opts.tol.image):
                k = idx
                break
    if k is None:
        state.points.append(x)
        state.point_images.append(image)
        state.point_bases.append(d.key)
        k = len(state.points) - 1
    state.cell_point[d.key] = k


def _record_direction(state: EngineState, dm: DirectionMaximizer, p_orig: Problem,
                      opts: EngineOptions) -> bool:
    x = dm.structural
    probe = _l1_normalized(x)
    for y in state.directions:
        if np.all(np.abs(_l1_normalized(y) - probe) <= 1e-9):
            return False
    image = p_orig.image(x)
    if opts.dedupe_images:
        return dedupe_image_insert(state, x, image, "direction", opts.tol.image)
    state.directions.append(x)
    state.direction_images.append(image)
    return True


# -- main loop ---------------------------------------------------------------

def _dictionary_cap(p: Problem, opts: EngineOptions) -> int:
    if opts.max_dictionaries is not None:
        return opts.max_dictionaries
    return min(math.comb(p.n + p.m, p.m), 2_000_000)


def run_algorithm1(p: Problem, d0: Dictionary, options: Optional[EngineOptions] = None) -> Solution:
    """Run the parametric simplex walk from the initial dictionary ``d0``.

    ``p`` is the problem as given; ``d0`` only contributes its basis, which
    must be primal feasible with an optimality region meeting the interior
    of the parameter set.
    """
    opts = options or EngineOptions()
    tol = opts.tol
    norm, pm = prepare(p)
    d0 = materialize(norm, d0.basis)
    if not d0.is_primal_feasible(tol.feas):
        raise PreconditionViolated(f"initial basis {d0.basis} is not primal feasible")
    cap = _dictionary_cap(norm, opts)

    state = EngineState()
    j0 = defining_set(d0, pm, tol.defining)
    state.boundary[d0.key] = [d0, j0.defining, set()]
    heapq.heappush(state.heap, d0.key)
    _record_point(state, d0, p, opts)
    materialized = 1

    while state.heap:
        key = heapq.heappop(state.heap)
        d, jd, explored = state.boundary[key]
        for j in jd:
            i = leaving_variable(d, j, tol.pivot)
            if i is None:
                dm = extract_direction(d, j, tol.pivot)
                _record_direction(state, dm, p, opts)
                state.unbounded_cuts.append(
                    UnboundedCut(d.key, j, optimality_halfspace(d, j, pm)))
                continue
            if (j, i) in explored:
                continue
            state.pivot_log.append((d.key, j, i))
            dbar = pivot(norm, d, j, i, tol.pivot)
            materialized += 1
            if dbar.key in state.visited:
                continue
            if dbar.key in state.boundary:
                state.boundary[dbar.key][2].add((i, j))
                continue
            if materialized > cap:
                raise NumericalBreakdown(
                    f"dictionary cap {cap} exceeded; visited={len(state.visited)} "
                    f"boundary={len(state.boundary)} last={dbar.key}")
            if not dbar.is_primal_feasible(tol.feas):
                raise NumericalBreakdown(f"pivot ({j}, {i}) from {d.key} lost primal feasibility")
            _record_point(state, dbar, p, opts)
            jbar = defining_set(dbar, pm, tol.defining)
            state.boundary[dbar.key] = [dbar, jbar.defining, {(i, j)}]
            heapq.heappush(state.heap, dbar.key)
        state.visited[key] = (d, jd)
        del state.boundary[key]

    sol = _assemble(p, norm, pm, state, opts)
    sol.stats["materialized"] = materialized
    if opts.filter_generators:
        sol = filter_generators(sol)
    return sol


def _assemble(p: Problem, norm: Problem, pm: ParamMap, state: EngineState,
              opts: EngineOptions) -> Solution:
    cells = []
    uncertified = []
    for key, (d, jd) in state.visited.items():
        hs = [optimality_halfspace(d, j, pm) for j in jd] + list(pm.cone_halfspaces)
        witness = cell_witness(d, pm, opts.tol.defining) if opts.certify else None
        if opts.certify and witness is None:
            uncertified.append(key)
        cells.append(Cell(key, tuple(jd), hs, state.cell_point.get(key), witness))
    if uncertified:
        log.warning("%d dictionaries without an interior-parameter witness", len(uncertified))
    n, q = p.n, p.q
    return Solution(
        status=SOLVED,
        points=np.array(state.points).reshape(-1, n),
        directions=np.array(state.directions).reshape(-1, n),
        point_images=np.array(state.point_images).reshape(-1, q),
        direction_images=np.array(state.direction_images).reshape(-1, q),
        cone_generators=p.cone.generators.copy(),
        interior_point=norm.interior_point.copy(),
        orientation=norm.orientation,
        cells=cells,
        unbounded_cuts=list(state.unbounded_cuts),
        lambda_halfspaces=list(pm.cone_halfspaces),
        stats={
            "visited": list(state.visited),
            "pivots": len(state.pivot_log),
            "pivot_log": list(state.pivot_log),
            "uncertified": uncertified,
            "point_bases": list(state.point_bases),
        },
    )


# -- redundancy filter -------------------------------------------------------

def _in_generated(target, points, rays, tol: float = 1e-9) -> bool:
    """LP test: ``target in conv(points) + cone(rays)`` (``points`` may be empty for rays only)."""
    target = np.asarray(target, dtype=float)
    q = target.size
    points = np.asarray(points, dtype=float).reshape(-1, q)
    rays = np.asarray(rays, dtype=float).reshape(-1, q)
    k, r = len(points), len(rays)
    if k + r == 0:
        return bool(np.all(np.abs(target) <= tol))
    a_eq = np.hstack([points.T, rays.T])
    b_eq = target
    if k:
        a_eq = np.vstack([a_eq, np.concatenate([np.ones(k), np.zeros(r)])])
        b_eq = np.append(b_eq, 1.0)
    out = scalarlp.maximize(np.zeros(k + r), a_eq=a_eq, b_eq=b_eq)
    return out.status == scalarlp.OPTIMAL


def filter_generators(sol: Solution) -> Solution:
    """Greedily drop points and directions that the remaining generators already span."""
    cone_rays = -sol.cone_generators.T
    dkeep = list(range(len(sol.directions)))
    for k in list(dkeep):
        others = [sol.direction_images[i] for i in dkeep if i != k]
        rays = np.vstack([np.array(others).reshape(-1, sol.q), cone_rays])
        if _in_generated(sol.direction_images[k], [], rays):
            dkeep.remove(k)
    rays = np.vstack([sol.direction_images[dkeep].reshape(-1, sol.q), cone_rays])
    pkeep = list(range(len(sol.points)))
    for k in list(pkeep):
        if len(pkeep) == 1:
            break
        others = [sol.point_images[i] for i in pkeep if i != k]
        if _in_generated(sol.point_images[k], others, rays):
            pkeep.remove(k)
    remap = {old: new for new, old in enumerate(pkeep)}
    cells = [replace(c, point_index=remap.get(c.point_index)) for c in sol.cells]
    stats = dict(sol.stats)
    stats["filtered"] = {"points_dropped": len(sol.points) - len(pkeep),
                         "directions_dropped": len(sol.directions) - len(dkeep)}
    return replace(sol,
                   points=sol.points[pkeep].reshape(-1, sol.points.shape[1]),
                   point_images=sol.point_images[pkeep].reshape(-1, sol.q),
                   directions=sol.directions[dkeep].reshape(-1, sol.directions.shape[1]),
                   direction_images=sol.direction_images[dkeep].reshape(-1, sol.q),
                   cells=cells, stats=stats)


# -- initialization ----------------------------------------------------------

def _weighted_lp(p: Problem, w) -> scalarlp.ScalarLp:
    return scalarlp.ScalarLp(p.objective @ np.asarray(w, dtype=float), p.constraint_matrix, p.rhs)


def _feasible_dictionary(norm: Problem) -> Dictionary:
    if np.all(norm.rhs >= 0):
        return materialize(norm, range(norm.n, norm.n + norm.m))
    basis = scalarlp.feasible_basis(scalarlp.ScalarLp(np.zeros(norm.n), norm.constraint_matrix,
                                                      norm.rhs))
    if basis is None:
        raise InfeasibleProblem("no x >= 0 satisfies A x <= b")
    return materialize(norm, basis)


def _optimal_basis(norm: Problem, w) -> tuple:
    out = scalarlp.solve_lp(_weighted_lp(norm, w))
    if out.status == scalarlp.INFEASIBLE:
        raise InfeasibleProblem("no x >= 0 satisfies A x <= b")
    if out.status == scalarlp.UNBOUNDED:
        raise ScalarUnbounded(f"weighted-sum problem is unbounded for w = {w}")
    return out.basis


def solve_p0(norm: Problem) -> Optional[np.ndarray]:
    """Solve the weight-finding LP; returns ``w*`` or ``None`` when it is infeasible.

    With a primal feasible dictionary ``x_B = B^-1 b - B^-1 N x_N`` the
    problem is rewritten over ``x_N`` with data ``(B^-1 N, B^-1 b >= 0, -Z_N)``
    so the LP ``min b'u : A'^T u >= P' w, Y^T w >= 1, u >= 0`` is bounded.
    """
    d = _feasible_dictionary(norm)
    a = d.binv_n
    b = np.maximum(d.binv_b, 0.0)
    pmat = -d.reduced_costs
    m, n = a.shape
    q = norm.q
    y = norm.cone.generators
    t = y.shape[1]
    # variables (u, w); u >= 0, w free
    cost = np.concatenate([-b, np.zeros(q)])
    rows1 = np.hstack([a.T, -pmat])
    rows2 = np.hstack([np.zeros((t, m)), y.T])
    a_ge = np.vstack([rows1, rows2])
    b_ge = np.concatenate([np.zeros(n), np.ones(t)])
    out = scalarlp.maximize(cost, a_ge=a_ge, b_ge=b_ge, free=(False,) * m + (True,) * q)
    if out.status == scalarlp.INFEASIBLE:
        return None
    if out.status != scalarlp.OPTIMAL:
        raise NumericalBreakdown("weight-finding LP reported unbounded")
    return out.solution[m:]


def init_via_p0(p: Problem) -> InitResult:
    norm, pm = prepare(p)
    w_star = solve_p0(norm)
    if w_star is None:
        raise NoSolution("the lower image has no vertex: weight-finding LP is infeasible")
    w0 = w_star / (norm.interior_point @ w_star)
    basis = _optimal_basis(norm, w0)
    return InitResult(materialize(norm, basis), "p0", norm.orientation * w0,
                      {"w_star": norm.orientation * w_star})


def init_via_weight(p: Problem, w0, tol: Optional[Tolerances] = None) -> InitResult:
    tol = tol or default_tolerances()
    norm, pm = prepare(p)
    w = norm.orientation * np.asarray(w0, dtype=float).ravel()
    if w.size != norm.q:
        raise PreconditionViolated(f"weight has {w.size} entries, expected {norm.q}")
    slack = norm.cone.generators.T @ w
    cw = norm.interior_point @ w
    if np.any(slack < -tol.geom) or cw <= 0:
        raise PreconditionViolated("weight is not in the dual cone (or is zero)")
    w = w / cw
    basis = _optimal_basis(norm, w)
    d0 = materialize(norm, basis)
    on_boundary = slack.min() <= tol.geom * max(1.0, np.abs(slack).max())
    if on_boundary and cell_witness(d0, pm, tol.defining) is None:
        log.info("weight on the dual-cone boundary gave a weak basis; falling back to P0")
        return init_via_p0(p)
    return InitResult(d0, "weight", norm.orientation * w)


def _mu_halfspace(z: np.ndarray, c_tilde: np.ndarray) -> HalfspaceLambda:
    # z = (z_w (q entries), z_mu); value w(lam) @ z_w + mu * z_mu
    zw, zmu = z[:-1], z[-1]
    return HalfspaceLambda(np.append(zw[:-1] - zw[-1] * c_tilde, zmu), zw[-1])


def init_perturbation(p: Problem, tol: Optional[Tolerances] = None) -> InitResult:
    """Phase-1 style walk over ``(lam, mu)`` for the objective ``w(lam)^T P^T x - mu 1^T x``."""
    tol = tol or default_tolerances()
    norm, pm = prepare(p)
    if np.any(norm.rhs < 0):
        raise PreconditionViolated("perturbation initialization needs b >= 0")
    n, m, q = norm.n, norm.m, norm.q
    aug_obj = np.zeros((n + m, q + 1))
    aug_obj[:n, :q] = norm.objective
    aug_obj[:n, q] = -1.0
    amat = norm.augmented_matrix
    domain = [HalfspaceLambda(np.append(h.normal, 0.0), h.offset) for h in pm.cone_halfspaces]
    domain.append(HalfspaceLambda(np.append(np.zeros(q - 1), 1.0), 0.0))

    def build(basis):
        return materialize_arrays(amat, norm.rhs, aug_obj, basis, n)

    def region(d):
        return {j: _mu_halfspace(d.reduced_costs[k], pm.c_tilde) for k, j in enumerate(d.nonbasis)}

    def qualifies(d):
        at_zero = [HalfspaceLambda(h.normal[:-1], h.offset) for h in region(d).values()]
        return region_interior_witness(pm.cone_halfspaces, loose=at_zero,
                                       tol_def=tol.defining) is not None

    d = build(range(n, n + m))
    first_region = region(d)
    extra = {"first_region": first_region, "path": [d.key]}
    if qualifies(d):
        return InitResult(materialize(norm, d.key), "perturb", extra=extra)
    boundary = {d.key: [d, defining_indices(region(d), domain, tol.defining).defining, set()]}
    heap = [d.key]
    visited = set()
    while heap:
        key = heapq.heappop(heap)
        d, jd, explored = boundary[key]
        for j in jd:
            i = leaving_variable(d, j, tol.pivot)
            if i is None or (j, i) in explored:
                continue
            dbar = pivot(norm, d, j, i, tol.pivot, aug_objective=aug_obj)
            if dbar.key in visited:
                continue
            if dbar.key in boundary:
                boundary[dbar.key][2].add((i, j))
                continue
            extra["path"].append(dbar.key)
            if qualifies(dbar):
                return InitResult(materialize(norm, dbar.key), "perturb", extra=extra)
            jbar = defining_indices(region(dbar), domain, tol.defining).defining
            boundary[dbar.key] = [dbar, jbar, {(i, j)}]
            heapq.heappush(heap, dbar.key)
        visited.add(key)
        del boundary[key]
    raise NoSolution("perturbation walk covered the parameter set without an initial dictionary")


# -- top level ---------------------------------------------------------------

def initialize(p: Problem, init: str = "p0", weight=None,
               tol: Optional[Tolerances] = None) -> InitResult:
    norm, _ = prepare(p)
    _feasible_dictionary(norm)  # raises InfeasibleProblem
    if weight is not None or init == "weight":
        if weight is None:
            raise PreconditionViolated("init='weight' needs a weight vector")
        try:
            return init_via_weight(p, weight, tol)
        except ScalarUnbounded:
            log.info("weighted problem unbounded for the given weight; using P0")
            return init_via_p0(p)
    if init == "perturb":
        if np.any(norm.rhs < 0):
            return init_via_p0(p)
        return init_perturbation(p, tol)
    if init == "p0":
        return init_via_p0(p)
    raise ValueError(f"unknown initialization {init!r}")


def solve(p: Problem, init: str = "p0", weight=None,
          options: Optional[EngineOptions] = None) -> Solution:
    """Compute a finite solution of the vector LP.

    Raises :class:`InfeasibleProblem` or :class:`NoSolution` when there is
    nothing to return.
    """
    opts = options or EngineOptions()
    start = initialize(p, init, weight, opts.tol)
    sol = run_algorithm1(p, start.dictionary, opts)
    sol.stats["init"] = start.method
    return sol
