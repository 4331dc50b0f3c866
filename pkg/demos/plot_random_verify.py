"""
Random instances and the brute-force oracle
===========================================

Generate random problems, solve them, and check each answer two ways: a grid
of weighted LPs and, for small sizes, enumeration of every basis.
"""
from __future__ import annotations

import time

from paravec import NoSolution, solve
from paravec.generators import degenerate, nondegenerate
from paravec.oracle import brute_force_lower_image, support_function_equality, verify

# %%
# A mid-sized unstructured instance: solve, then run the grid and recession checks.
p = nondegenerate(3, 12, 15, seed=4)
t0 = time.perf_counter()
sol = solve(p)
print(f"{len(sol.points)} points, {len(sol.directions)} directions, "
      f"{len(sol.stats['visited'])} bases in {time.perf_counter() - t0:.2f} s")
grid, rec = verify(p, sol)
print("grid mismatches:", len(grid.mismatches), "recession mismatches:", len(rec.mismatches))

# %%
# Small degenerate instances can be enumerated exhaustively. The support
# function of the solver's generators should match the enumerated ones.
for seed in range(6):
    q = degenerate(3, 5, 4, seed)
    try:
        s = solve(q)
    except NoSolution:
        print(seed, "no solution")
        continue
    bf = brute_force_lower_image(q)
    gap = support_function_equality((s.point_images, s.direction_images), bf.generators,
                                    q.cone, 200)
    print(f"seed {seed}: {len(s.points)} points vs {bf.bases_checked} bases enumerated, "
          f"gap {gap:.1e}")
