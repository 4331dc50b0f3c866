"""JSON problem/solution documents and export of the parameter partition.

Floats are written with ``repr`` (the shortest string that round-trips),
so parse and serialize are exact inverses on finite doubles.
"""
from __future__ import annotations

import json
import math
from typing import Optional

import numpy as np

from .engine import Cell, Solution, UnboundedCut, SOLVED
from .errors import DimensionMismatch, ParseError, UnsupportedDimension
from .model import Cone, HalfspaceLambda, Problem

PROBLEM_FIELDS = ("num_vars", "num_constraints", "num_objectives", "objective", "A", "b")


def _load(document) -> dict:
    if isinstance(document, dict):
        return document
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ParseError("top-level value must be an object")
    return data


def _matrix(data: dict, name: str, rows: Optional[int] = None, cols: Optional[int] = None):
    raw = data[name]
    try:
        arr = np.array(raw, dtype=float)
    except (TypeError, ValueError):
        raise ParseError(f"field {name!r}: expected a list of numeric rows") from None
    if arr.ndim != 2 and not (arr.ndim == 1 and arr.size == 0):
        raise DimensionMismatch(f"field {name!r}: expected a rectangular 2-D array")
    if not np.all(np.isfinite(arr)):
        raise ParseError(f"field {name!r}: non-finite entry")
    if rows is not None and arr.shape[0] != rows:
        raise DimensionMismatch(f"field {name!r}: {arr.shape[0]} rows, expected {rows}")
    if cols is not None and arr.ndim == 2 and arr.shape[1] != cols:
        raise DimensionMismatch(f"field {name!r}: {arr.shape[1]} columns, expected {cols}")
    return arr


def _vector(data: dict, name: str, size: Optional[int] = None):
    try:
        arr = np.array(data[name], dtype=float)
    except (TypeError, ValueError):
        raise ParseError(f"field {name!r}: expected a list of numbers") from None
    if arr.ndim != 1:
        raise DimensionMismatch(f"field {name!r}: expected a flat list")
    if not np.all(np.isfinite(arr)):
        raise ParseError(f"field {name!r}: non-finite entry")
    if size is not None and arr.size != size:
        raise DimensionMismatch(f"field {name!r}: {arr.size} entries, expected {size}")
    return arr


def _count(data: dict, name: str) -> int:
    v = data[name]
    if isinstance(v, bool) or not isinstance(v, int) or v < 1:
        raise ParseError(f"field {name!r}: expected a positive integer")
    return v


def parse_problem(document) -> Problem:
    data = _load(document)
    for name in PROBLEM_FIELDS:
        if name not in data:
            raise ParseError(f"missing field {name!r}")
    n = _count(data, "num_vars")
    m = _count(data, "num_constraints")
    q = _count(data, "num_objectives")
    obj = _matrix(data, "objective", q, n)
    a = _matrix(data, "A", m, n)
    b = _vector(data, "b", m)
    cone = None
    if data.get("cone_generators") is not None:
        cone = Cone(_matrix(data, "cone_generators", cols=q).T)
    c = _vector(data, "interior_point", q) if data.get("interior_point") is not None else None
    return Problem(obj.T, a, b, cone, c)


def problem_to_dict(p: Problem) -> dict:
    return {
        "num_vars": p.n,
        "num_constraints": p.m,
        "num_objectives": p.q,
        "objective": p.objective.T.tolist(),
        "A": p.constraint_matrix.tolist(),
        "b": p.rhs.tolist(),
        "cone_generators": p.cone.generators.T.tolist(),
        "interior_point": p.interior_point.tolist(),
    }


def serialize_problem(p: Problem) -> str:
    return json.dumps(problem_to_dict(p), indent=1)


# -- solutions ---------------------------------------------------------------

def _hs(h: HalfspaceLambda) -> dict:
    return h.to_dict()


def _hs_from(d: dict) -> HalfspaceLambda:
    return HalfspaceLambda(np.array(d["normal"], dtype=float), float(d["offset"]))


def solution_to_dict(sol: Solution) -> dict:
    doc = {
        "status": sol.status,
        "bounded": sol.bounded,
        "points": sol.points.tolist(),
        "directions": sol.directions.tolist(),
        "point_images": sol.point_images.tolist(),
        "direction_images": sol.direction_images.tolist(),
        "lower_image_rays": sol.lower_image_rays.tolist(),
        "cone_generators": sol.cone_generators.T.tolist(),
        "interior_point": sol.interior_point.tolist(),
        "orientation": sol.orientation,
        "lambda_halfspaces": [_hs(h) for h in sol.lambda_halfspaces],
        "cells": [
            {
                "basis": list(c.basis),
                "defining": list(c.defining),
                "halfspaces": [_hs(h) for h in c.halfspaces],
                "point_index": c.point_index,
                "witness": None if c.witness is None else c.witness.tolist(),
            }
            for c in sol.cells
        ],
        "unbounded_cuts": [
            {"basis": list(u.basis), "entering": u.entering, **_hs(u.halfspace)}
            for u in sol.unbounded_cuts
        ],
        "stats": {
            "pivots": sol.stats.get("pivots", 0),
            "visited": [list(k) for k in sol.stats.get("visited", [])],
            "init": sol.stats.get("init"),
        },
    }
    return doc


def serialize_solution(sol: Solution) -> str:
    return json.dumps(solution_to_dict(sol), indent=1)


def status_document(status: str, message: str = "") -> str:
    return json.dumps({"status": status, "message": message}, indent=1)


def parse_solution(document) -> Solution:
    data = _load(document)
    if "status" not in data:
        raise ParseError("missing field 'status'")
    status = data["status"]
    if status != SOLVED:
        empty = np.zeros((0, 0))
        return Solution(status, empty, empty, empty, empty, empty, np.zeros(0),
                        stats={"message": data.get("message", "")})
    for name in ("points", "directions", "point_images", "direction_images",
                 "cone_generators", "interior_point"):
        if name not in data:
            raise ParseError(f"missing field {name!r}")
    y = np.array(data["cone_generators"], dtype=float).T
    q = y.shape[0]
    pts = np.array(data["points"], dtype=float)
    n = pts.shape[1] if pts.ndim == 2 else 0
    stats = dict(data.get("stats", {}))
    stats["visited"] = [tuple(k) for k in stats.get("visited", [])]
    cells = [
        Cell(tuple(c["basis"]), tuple(c.get("defining", ())),
             [_hs_from(h) for h in c["halfspaces"]], c.get("point_index"),
             None if c.get("witness") is None else np.array(c["witness"], dtype=float))
        for c in data.get("cells", [])
    ]
    cuts = [UnboundedCut(tuple(u["basis"]), u["entering"], _hs_from(u))
            for u in data.get("unbounded_cuts", [])]
    return Solution(
        status=status,
        points=pts.reshape(-1, n),
        directions=np.array(data["directions"], dtype=float).reshape(-1, n),
        point_images=np.array(data["point_images"], dtype=float).reshape(-1, q),
        direction_images=np.array(data["direction_images"], dtype=float).reshape(-1, q),
        cone_generators=y,
        interior_point=np.array(data["interior_point"], dtype=float),
        orientation=int(data.get("orientation", 1)),
        cells=cells,
        unbounded_cuts=cuts,
        lambda_halfspaces=[_hs_from(h) for h in data.get("lambda_halfspaces", [])],
        stats=stats,
    )


# -- partition export --------------------------------------------------------

def polygon_vertices(halfspaces, tol: float = 1e-9) -> np.ndarray:
    """Vertices (counter-clockwise) of a bounded 2-D polygon given by halfspaces."""
    a = np.array([h.normal for h in halfspaces])
    beta = np.array([h.offset for h in halfspaces])
    verts = []
    for i in range(len(halfspaces)):
        for j in range(i + 1, len(halfspaces)):
            mat = np.array([a[i], a[j]])
            if abs(np.linalg.det(mat)) < 1e-12:
                continue
            v = np.linalg.solve(mat, -np.array([beta[i], beta[j]]))
            if np.all(a @ v + beta >= -tol * (1.0 + np.abs(v).max())):
                if not any(np.allclose(v, u, atol=1e-10) for u in verts):
                    verts.append(v)
    if not verts:
        return np.zeros((0, 2))
    pts = np.array(verts)
    centre = pts.mean(axis=0)
    order = np.argsort(np.arctan2(pts[:, 1] - centre[1], pts[:, 0] - centre[0]))
    return pts[order]


def polygon_area(verts) -> float:
    verts = np.asarray(verts, dtype=float)
    if len(verts) < 3:
        return 0.0
    x, y = verts[:, 0], verts[:, 1]
    return 0.5 * abs(float(x @ np.roll(y, -1) - y @ np.roll(x, -1)))


def interval(halfspaces) -> tuple:
    lo, hi = -math.inf, math.inf
    for h in halfspaces:
        a = float(h.normal[0])
        if a > 0:
            lo = max(lo, -h.offset / a)
        elif a < 0:
            hi = min(hi, -h.offset / a)
        elif h.offset < 0:
            return (math.nan, math.nan)
    return lo, hi


def cell_polygons(sol: Solution) -> list:
    return [polygon_vertices(c.halfspaces) for c in sol.cells]


def _check_dim(sol: Solution, fmt: str) -> int:
    dim = sol.q - 1
    if fmt not in ("csv", "svg"):
        raise ValueError(f"unknown export format {fmt!r}")
    if fmt == "svg" and dim > 2:
        raise UnsupportedDimension(f"svg export needs q <= 3, got q = {sol.q}")
    return dim


def export_partition(sol: Solution, fmt: str = "csv") -> str:
    dim = _check_dim(sol, fmt)
    if fmt == "svg":
        return _svg(sol, dim)
    lines = []
    if dim == 1:
        lines.append("cell,basis,lower,upper")
        for k, c in enumerate(sol.cells):
            lo, hi = interval(c.halfspaces)
            lines.append(f"{k},{_basis(c)},{float(lo)!r},{float(hi)!r}")
    elif dim == 2:
        lines.append("cell,basis,vertices")
        for k, (c, v) in enumerate(zip(sol.cells, cell_polygons(sol))):
            pts = ";".join(f"{float(x)!r} {float(y)!r}" for x, y in v)
            lines.append(f"{k},{_basis(c)},{pts}")
    else:
        lines.append("cell,basis,row," + ",".join(f"a{i}" for i in range(dim)) + ",offset")
        for k, c in enumerate(sol.cells):
            for r, h in enumerate(c.halfspaces):
                coeffs = ",".join(repr(float(x)) for x in h.normal)
                lines.append(f"{k},{_basis(c)},{r},{coeffs},{h.offset!r}")
    return "\n".join(lines) + "\n"


def _basis(c: Cell) -> str:
    return " ".join(str(i) for i in c.basis)


_SVG_HEAD = ('<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
             'viewBox="0 0 {w} {h}">\n')


def _svg(sol: Solution, dim: int, size: int = 400, pad: int = 20) -> str:
    lam = sol.lambda_halfspaces
    body = []
    if dim == 1:
        lo, hi = interval(lam)
        sx = (size - 2 * pad) / (hi - lo)

        def x(t):
            return pad + (t - lo) * sx
        body.append(f'<rect x="{x(lo):.3f}" y="{pad}" width="{x(hi) - x(lo):.3f}" height="40" '
                    'fill="#bbbbbb"/>')
        for k, c in enumerate(sol.cells):
            a, b = interval(c.halfspaces)
            body.append(f'<rect x="{x(a):.3f}" y="{pad}" width="{x(b) - x(a):.3f}" height="40" '
                        f'fill="#4a78c2" stroke="black"><title>cell {k}</title></rect>')
        height = 2 * pad + 40
    else:
        outer = polygon_vertices(lam)
        lo = outer.min(axis=0)
        span = max(float((outer.max(axis=0) - lo).max()), 1e-12)
        s = (size - 2 * pad) / span

        def path(v):
            pts = " ".join(f"{pad + (p[0] - lo[0]) * s:.3f},{size - pad - (p[1] - lo[1]) * s:.3f}"
                           for p in v)
            return pts
        body.append(f'<polygon points="{path(outer)}" fill="#bbbbbb"/>')
        for k, v in enumerate(cell_polygons(sol)):
            if len(v) >= 3:
                body.append(f'<polygon points="{path(v)}" fill="#4a78c2" stroke="black" '
                            f'stroke-width="1"><title>cell {k}</title></polygon>')
        height = size
    return _SVG_HEAD.format(w=size, h=height) + "\n".join(body) + "\n</svg>\n"
