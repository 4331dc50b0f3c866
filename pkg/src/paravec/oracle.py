"""Brute-force checks of computed solutions.

Everything here works from the problem data and the returned generators
only; nothing reuses the engine's dictionaries or regions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import scalarlp
from .engine import Solution
from .errors import SingularMatrix, TooLarge
from .densela import lu_factorize, lu_solve
from .model import Cone, ParamMap, Problem, param_w, prepare

BRUTE_FORCE_LIMIT = 18
VALUE_RTOL = 1e-6
RAY_TOL = 1e-8


@dataclass
class OracleReport:
    grid_points_checked: int = 0
    mismatches: list = field(default_factory=list)  # (lam, expected, got)
    max_abs_gap: float = 0.0
    ambiguous: int = 0  # points too close to the bounded/unbounded border to judge
    tolerance: float = VALUE_RTOL

    @property
    def ok(self) -> bool:
        return not self.mismatches


# -- parameter sampling ------------------------------------------------------

def lambda_bounding_box(pm: ParamMap) -> np.ndarray:
    """``(dim, 2)`` array of coordinate bounds of the parameter set."""
    dim = pm.dim
    a_ge = np.array([h.normal for h in pm.cone_halfspaces]).reshape(-1, dim)
    b_ge = np.array([-h.offset for h in pm.cone_halfspaces])
    box = np.zeros((dim, 2))
    free = (True,) * dim
    for k in range(dim):
        for col, sign in ((0, -1.0), (1, 1.0)):
            e = np.zeros(dim)
            e[k] = sign
            out = scalarlp.maximize(e, a_ge=a_ge, b_ge=b_ge, free=free)
            if out.status != scalarlp.OPTIMAL:
                raise ValueError("parameter set is not bounded")
            box[k, col] = sign * out.objective_value
    return box


def lambda_grid(pm: ParamMap, density: int, seed: int = 0, extra=()) -> np.ndarray:
    """Points of the parameter set on a regular grid over its bounding box.

    For more than two parameters the grid is replaced by ``density**2``
    uniform samples from the box. ``extra`` points are appended as given.
    """
    box = lambda_bounding_box(pm)
    dim = pm.dim
    if dim <= 2:
        axes = [np.linspace(lo, hi, density) for lo, hi in box]
        pts = np.array(list(itertools.product(*axes))).reshape(-1, dim)
    else:
        rng = np.random.default_rng(seed)
        pts = rng.uniform(box[:, 0], box[:, 1], size=(density ** 2, dim))
    keep = [x for x in pts if pm.contains(x, 1e-12)]
    keep.extend(np.asarray(e, dtype=float) for e in extra if e is not None)
    return np.array(keep).reshape(-1, dim)


def _weight_sampler(cone: Cone, interior_point=None):
    dummy = Problem(np.zeros((1, cone.q)), np.zeros((1, 1)), np.ones(1), cone, interior_point)
    norm, pm = prepare(dummy)
    return norm.orientation, pm


def sample_weights(cone: Cone, count: int, seed: int = 0, interior_point=None) -> np.ndarray:
    """Uniform samples from ``{w in C+ : c @ w = 1}`` by rejection from a bounding box."""
    orientation, pm = _weight_sampler(cone, interior_point)
    box = lambda_bounding_box(pm)
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        lam = rng.uniform(box[:, 0], box[:, 1], size=(max(count, 16), pm.dim))
        for x in lam:
            if pm.contains(x, 0.0):
                out.append(orientation * param_w(pm, x))
                if len(out) == count:
                    break
    return np.array(out)


# -- grid scalarization ------------------------------------------------------

def weighted_lp(p: Problem, w) -> scalarlp.ScalarLp:
    return scalarlp.ScalarLp(p.objective @ np.asarray(w, dtype=float), p.constraint_matrix, p.rhs)


def grid_scalarization_check(p: Problem, sol: Solution, grid_density: int = 30,
                             tol: float = VALUE_RTOL, include_witnesses: bool = True) -> OracleReport:
    """Compare the scalarized optimum with the best generator value on a grid over the parameters."""
    pm = sol.param_map()
    witnesses = [c.witness for c in sol.cells] if include_witnesses else []
    grid = lambda_grid(pm, grid_density, extra=witnesses)
    report = OracleReport(tolerance=tol)
    pimg = np.asarray(sol.point_images)
    dimg = np.asarray(sol.direction_images).reshape(-1, p.q)
    for lam in grid:
        w = sol.weight(lam)
        out = scalarlp.solve_lp(weighted_lp(p, w))
        report.grid_points_checked += 1
        rays = dimg @ w
        if out.status == scalarlp.OPTIMAL:
            v = out.objective_value
            got = float((pimg @ w).max()) if len(pimg) else -np.inf
            gap = abs(v - got)
            report.max_abs_gap = max(report.max_abs_gap, gap)
            if gap > tol * (1.0 + abs(v)):
                report.mismatches.append((lam, ("optimal", v), ("optimal", got)))
            elif rays.size and rays.max() > tol * (1.0 + np.abs(dimg).max()):
                report.mismatches.append((lam, ("optimal", v), ("unbounded", float(rays.max()))))
        elif out.status == scalarlp.UNBOUNDED:
            if rays.size and rays.max() > RAY_TOL:
                continue
            ray = out.certificate_ray
            rate = float(w @ (p.objective.T @ ray)) / max(1.0, float(np.abs(ray).max()))
            if rate <= 1e-7:
                report.ambiguous += 1
                continue
            got = float(rays.max()) if rays.size else None
            report.mismatches.append((lam, ("unbounded", rate), ("no improving direction", got)))
            report.max_abs_gap = np.inf
        else:
            report.mismatches.append((lam, (out.status, None), ("solution", None)))
            report.max_abs_gap = np.inf
    return report


def no_solution_check(p: Problem, grid_density: int = 30, margin: float = 1e-9) -> OracleReport:
    """Every strictly interior grid weight must give an unbounded weighted-sum problem."""
    norm, pm = prepare(p)
    report = OracleReport()
    for lam in lambda_grid(pm, grid_density):
        if min(h.value(lam) for h in pm.cone_halfspaces) <= margin:
            continue
        w = norm.orientation * param_w(pm, lam)
        out = scalarlp.solve_lp(weighted_lp(p, w))
        report.grid_points_checked += 1
        if out.status != scalarlp.UNBOUNDED:
            report.mismatches.append((lam, "unbounded", out.status))
    return report


def recession_equivalence(p: Problem, sol: Solution, samples: int = 100,
                          seed: int = 0) -> OracleReport:
    """For sampled ``w`` in the dual cone: the weighted problem is bounded iff no direction image
    has a positive ``w`` value."""
    report = OracleReport()
    ws = sample_weights(Cone(sol.cone_generators), samples, seed,
                        sol.orientation * sol.interior_point)
    dimg = np.asarray(sol.direction_images).reshape(-1, p.q)
    for w in ws:
        out = scalarlp.solve_lp(weighted_lp(p, w))
        report.grid_points_checked += 1
        scale = np.abs(dimg).max(axis=1) if len(dimg) else np.zeros(0)
        rel = dimg @ w / np.maximum(scale, 1.0) if len(dimg) else np.zeros(0)
        ray_bounded = not (rel.size and rel.max() > RAY_TOL)
        lp_bounded = out.status == scalarlp.OPTIMAL
        if ray_bounded != lp_bounded:
            if rel.size and abs(rel.max()) <= 1e-6:
                report.ambiguous += 1
                continue
            report.mismatches.append((w, out.status, "bounded" if ray_bounded else "unbounded"))
    return report


# -- brute force -------------------------------------------------------------

@dataclass
class BruteForceImage:
    points: np.ndarray
    rays: np.ndarray
    point_images: np.ndarray
    ray_images: np.ndarray
    bases_checked: int = 0

    @property
    def generators(self) -> tuple:
        return self.point_images, self.ray_images


def _add_unique(store: list, v: np.ndarray, tol: float) -> None:
    for u in store:
        if np.all(np.abs(u - v) <= tol):
            return
    store.append(v)


def brute_force_lower_image(p: Problem, tol: float = 1e-9) -> BruteForceImage:
    """All basic feasible solutions and all extreme rays of ``{x >= 0 : A x <= 0}`` by enumeration."""
    n, m = p.n, p.m
    if n + m > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"n + m = {n + m} exceeds the enumeration limit {BRUTE_FORCE_LIMIT}")
    amat = np.hstack([p.constraint_matrix, np.eye(m)])
    points: list = []
    rays: list = []
    count = 0
    for basis in itertools.combinations(range(n + m), m):
        try:
            lu = lu_factorize(amat[:, basis])
        except SingularMatrix:
            continue
        count += 1
        xb = lu_solve(lu, p.rhs)
        if np.all(xb >= -1e-9 * (1.0 + np.abs(xb).max())):
            x = np.zeros(n + m)
            x[list(basis)] = np.maximum(xb, 0.0)
            _add_unique(points, x[:n], 1e-9)
        for j in range(n + m):
            if j in basis:
                continue
            col = lu_solve(lu, amat[:, j])
            if np.all(col <= tol):
                r = np.zeros(n + m)
                r[j] = 1.0
                r[list(basis)] = -col
                if not np.any(r[:n]):
                    continue  # slack-only ray
                r = r[:n] / np.abs(r[:n]).sum()
                _add_unique(rays, r, 1e-9)
    pts = np.array(points).reshape(-1, n)
    rs = np.array(rays).reshape(-1, n)
    return BruteForceImage(pts, rs, pts @ p.objective, rs @ p.objective, count)


# -- support functions -------------------------------------------------------

def _normalized_rays(rays) -> np.ndarray:
    rays = np.asarray(rays, dtype=float)
    if rays.size == 0:
        return rays.reshape(0, -1)
    norms = np.linalg.norm(rays, axis=1)
    keep = norms > 1e-12
    return rays[keep] / norms[keep, None]


def support_function_equality(gen_a, gen_b, cone: Cone, samples: int = 100, seed: int = 0,
                              interior_point=None, weights=None) -> float:
    """Largest gap between the support functions of two generated lower images.

    Each generator pair is ``(point_images, ray_images)``; the negated cone
    generators are added to both ray sets. Returns ``inf`` when one side is
    bounded in a sampled direction and the other is not.
    """
    q = cone.q
    neg_y = -cone.generators.T
    sides = []
    for pts, rays in (gen_a, gen_b):
        pts = np.asarray(pts, dtype=float).reshape(-1, q)
        r = _normalized_rays(np.vstack([np.asarray(rays, dtype=float).reshape(-1, q), neg_y]))
        sides.append((pts, r))
    ws = weights if weights is not None else sample_weights(cone, samples, seed, interior_point)
    gap = 0.0
    for w in ws:
        bounded = [not np.any(r @ w > RAY_TOL) for _, r in sides]
        if bounded[0] != bounded[1]:
            return np.inf
        if not bounded[0]:
            continue
        ha = (sides[0][0] @ w).max()
        hb = (sides[1][0] @ w).max()
        gap = max(gap, abs(float(ha - hb)))
    return gap


def cells_adjacent(c1, c2, tol: float = 1e-9) -> bool:
    """Closures of two cells intersect (LP feasibility of both halfspace lists)."""
    hs = list(c1.halfspaces) + list(c2.halfspaces)
    dim = hs[0].normal.size
    a_ge = np.array([h.normal for h in hs])
    b_ge = np.array([-h.offset - tol for h in hs])
    out = scalarlp.maximize(np.zeros(dim), a_ge=a_ge, b_ge=b_ge, free=(True,) * dim)
    return out.status == scalarlp.OPTIMAL


def cells_connected(sol: Solution) -> bool:
    cells = sol.cells
    if not cells:
        return False
    seen = {0}
    frontier = [0]
    while frontier:
        k = frontier.pop()
        for j in range(len(cells)):
            if j not in seen and cells_adjacent(cells[k], cells[j]):
                seen.add(j)
                frontier.append(j)
    return len(seen) == len(cells)


def verify(p: Problem, sol: Solution, grid_density: int = 30,
           samples: int = 100, seed: int = 0) -> tuple:
    """Grid check plus recession check; returns both reports."""
    return (grid_scalarization_check(p, sol, grid_density),
            recession_equivalence(p, sol, samples, seed))


def max_generator_value(points, w) -> Optional[float]:
    points = np.asarray(points, dtype=float)
    return float((points @ w).max()) if len(points) else None
