"""
Degeneracy and redundant generators
===================================

Under degeneracy the solver can return more points than the image needs. The
optional filter drops every generator that the others already span, and the
support function shows the image did not change.
"""
from __future__ import annotations

import numpy as np

from paravec import Cone, EngineOptions, Problem, solve
from paravec.oracle import support_function_equality

# %%
# Maximize ``(x1 - x2, x3 - x4)`` over ``x1 - x2 + x3 - x4 <= 1``. The image is a
# halfplane whose boundary line carries both returned points.
P = np.array([[1.0, 0], [-1, 0], [0, 1], [0, -1]])
problem = Problem(P, np.array([[1.0, -1, 1, -1]]), np.array([1.0]))

full = solve(problem)
lean = solve(problem, options=EngineOptions(filter_generators=True))
print("points before filtering:\n", full.points)
print("points after filtering:\n", lean.points)
print("directions:\n", lean.directions)

# %%
# Both generator sets give the same support function on sampled weights.
gap = support_function_equality((full.point_images, full.direction_images),
                                (lean.point_images, lean.direction_images),
                                Cone.orthant(2), 200)
print("largest support-function gap:", gap)
