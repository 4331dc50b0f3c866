"""
Solving a small three-objective LP
==================================

We maximize ``(x1, x2 - x3, x3)`` over ``x1 + x2 <= 5``, ``x1 + 2 x2 - x3 <= 9``,
``x >= 0`` with respect to the nonnegative orthant, then look at what the solver
returns and how the weight space is split into optimality cells.
"""
from __future__ import annotations

import numpy as np

from paravec import Cone, Problem, solve
from paravec.io import cell_polygons, polygon_area

# %%
# The objective matrix is ``n x q``: row ``i`` holds the coefficients of ``x_i``
# in every objective.
P = np.array([[1.0, 0, 0], [0, 1, 0], [0, -1, 1]])
A = np.array([[1.0, 1, 0], [1, 2, -1]])
b = np.array([5.0, 9.0])
problem = Problem(P, A, b, Cone.orthant(3), interior_point=np.ones(3))

sol = solve(problem)
print("status:", sol.status)
print("points:\n", sol.points)
print("directions:\n", sol.directions)

# %%
# Each visited basis owns a cell of the weight simplex. Weights are written as
# ``w = (lam1, lam2, 1 - lam1 - lam2)``.
for cell in sol.cells:
    print(cell.basis, "defined by", cell.defining, "-> point", sol.points[cell.point_index])

# %%
# Weights with ``lam1 + 2 lam2 < 1`` make the weighted problem unbounded; the
# solver records that halfspace and the direction responsible for it.
# Neighbouring dictionaries can report the same cut, so print each one once.
cuts = {(tuple(c.halfspace.normal.tolist()), -c.halfspace.offset) for c in sol.unbounded_cuts}
for normal, rhs in cuts:
    print("unbounded where", normal, "@ lam <", rhs)

# %%
# The bounded cells tile the part of the simplex where the weighted problem has
# an optimum. The simplex has area 1/2 and the unbounded wedge takes 1/4.
areas = [polygon_area(v) for v in cell_polygons(sol)]
print("cell areas:", np.round(areas, 4), "total", round(sum(areas), 6))

# %%
# Any weight inside a cell can be checked against a plain weighted LP.
lam = np.array([0.5, 0.4])
w = sol.weight(lam)
print("w =", w, "best generator value:", (sol.point_images @ w).max())
