from __future__ import annotations

import numpy as np
import pytest

from paravec import Cone, Problem
from paravec.engine import solve
from paravec.errors import TooLarge
from paravec.generators import nondegenerate
from paravec.oracle import (brute_force_lower_image, cells_connected, grid_scalarization_check,
                            lambda_bounding_box, no_solution_check, recession_equivalence,
                            sample_weights, support_function_equality)

from instances import as_set, ex51, ex52, ex61, no_solution


def test_grid_check_ex51_values():
    sol = solve(ex51())
    rep = grid_scalarization_check(ex51(), sol, 30)
    assert rep.ok and rep.grid_points_checked > 400
    w = sol.weight([0.5, 0.4])
    assert np.allclose(w, [0.5, 0.4, 0.1])
    assert (sol.point_images @ w).max() == pytest.approx(2.5)
    w = sol.weight([0.2, 0.2])
    assert sol.direction_images[0] @ w == pytest.approx(0.4)


def test_grid_check_ex61_all_optimal():
    sol = solve(ex61())
    rep = grid_scalarization_check(ex61(), sol, 100)
    assert rep.ok and rep.max_abs_gap < 1e-9


def test_grid_check_detects_missing_point():
    sol = solve(ex51())
    sol.points = sol.points[:1]
    sol.point_images = sol.point_images[:1]
    assert not grid_scalarization_check(ex51(), sol, 20).ok


def test_grid_check_detects_missing_direction():
    sol = solve(ex51())
    sol.directions = sol.directions[:0]
    sol.direction_images = sol.direction_images[:0]
    assert not grid_scalarization_check(ex51(), sol, 20).ok


def test_recession_equivalence():
    assert recession_equivalence(ex51(), solve(ex51())).ok
    assert recession_equivalence(ex52(), solve(ex52())).ok


def test_no_solution_check():
    assert no_solution_check(no_solution()).ok
    assert not no_solution_check(ex61()).ok


def test_brute_force_ex51():
    bf = brute_force_lower_image(ex51())
    imgs = as_set(bf.point_images)
    for v in [(5, 0, 0), (1, 4, 0), (0, 4, 1), (0, 4.5, 0)]:
        assert as_set([v]) <= imgs
    for v in solve(ex51()).point_images:
        assert as_set([v]) <= imgs
    rays = as_set(bf.ray_images)
    assert as_set([(0, -1, 1)]) <= rays


def test_brute_force_single_variable():
    p = Problem(np.array([[1.0, 1]]), np.array([[1.0]]), np.array([1.0]))
    bf = brute_force_lower_image(p)
    assert as_set(bf.points) == as_set([(0,), (1,)])
    assert len(bf.rays) == 0


def test_brute_force_ex52_rays():
    bf = brute_force_lower_image(ex52())
    unit = {tuple(np.round(r / np.abs(r).max(), 7) + 0.0) for r in bf.ray_images if r.any()}
    assert (1.0, -1.0) in unit and (-1.0, 1.0) in unit


def test_brute_force_limit():
    with pytest.raises(TooLarge):
        brute_force_lower_image(nondegenerate(3, 10, 9, 0))


def test_support_function_identical_and_brute_force():
    sol = solve(ex51())
    gen = (sol.point_images, sol.direction_images)
    assert support_function_equality(gen, gen, Cone.orthant(3), 50) == 0.0
    bf = brute_force_lower_image(ex51())
    assert support_function_equality(gen, bf.generators, Cone.orthant(3), 200) <= 1e-6


def test_support_function_detects_difference():
    sol = solve(ex51())
    a = (sol.point_images, sol.direction_images)
    b = (sol.point_images[:1], sol.direction_images)
    assert support_function_equality(a, b, Cone.orthant(3), 200) > 0.1
    c = (sol.point_images, np.zeros((0, 3)))
    assert support_function_equality(a, c, Cone.orthant(3), 200) == np.inf


def test_weight_samples_in_dual_cone():
    y = np.array([[1.0, 1], [0, 1]])
    c = np.array([2.0, 1.0])
    ws = sample_weights(Cone(y), 50, seed=1, interior_point=c)
    assert np.all(ws @ y >= -1e-12)
    assert np.allclose(ws @ c, 1.0)


def test_bounding_box():
    sol = solve(ex51())
    assert np.allclose(lambda_bounding_box(sol.param_map()), [[0, 1], [0, 1]])


def test_connectedness_ex51():
    assert cells_connected(solve(ex51()))
