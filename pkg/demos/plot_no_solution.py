"""
A problem with no solution
==========================

If every interior weight makes the weighted problem unbounded, no set of
maximizing points can describe the image. The solver says so instead of
returning directions alone.
"""
from __future__ import annotations

import numpy as np

from paravec import NoSolution, Problem, solve
from paravec.oracle import no_solution_check

# %%
# ``x1`` can grow without limit (``-x1 + x2 <= 1``) and both objectives reward it.
problem = Problem(np.array([[1.0, 1], [0, 0]]), np.array([[-1.0, 1]]), np.array([1.0]))

for init in ("p0", "perturb"):
    try:
        solve(problem, init=init)
    except NoSolution as exc:
        print(f"{init}: no solution ({exc})")

# %%
# The oracle confirms it independently: on a grid of interior weights, every
# weighted LP is unbounded.
report = no_solution_check(problem, 20)
print("weights checked:", report.grid_points_checked, "ok:", report.ok)
