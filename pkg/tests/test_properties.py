from __future__ import annotations

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from paravec import Cone, Problem
from paravec.densela import lu_factorize, lu_solve, lu_solve_transposed
from paravec.dictionary import leaving_variable, materialize, pivot
from paravec.engine import solve
from paravec.errors import NoSolution
from paravec.generators import degenerate, nondegenerate
from paravec.model import HalfspaceLambda, ParamMap, normalize_orientation, param_w, prepare
from paravec.oracle import weighted_lp
from paravec import scalarlp

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)
seeds = st.integers(0, 10_000)


def vec(k):
    return arrays(float, k, elements=finite)


@st.composite
def interior_points(draw, q):
    # points of int R^q_+ or of its negative, so both orientations are exercised
    c = draw(arrays(float, q, elements=st.floats(0.1, 5)))
    return c if draw(st.booleans()) else -c


@given(st.integers(2, 5).flatmap(lambda q: st.tuples(interior_points(q), vec(q - 1))))
def test_weight_on_normalization_plane(args):
    c, lam = args
    cone = Cone.orthant(c.size) if c[0] > 0 else -Cone.orthant(c.size)
    p = Problem(np.zeros((1, c.size)), np.ones((1, 1)), np.ones(1), cone, c)
    norm = normalize_orientation(p)
    assert norm.interior_point[-1] == 1.0
    assert normalize_orientation(norm) is norm
    pm = ParamMap.from_problem(norm)
    assert np.isclose(norm.interior_point @ param_w(pm, lam), 1.0)


@given(st.integers(2, 5).flatmap(lambda q: st.tuples(vec(q), vec(q - 1), vec(q - 1))))
def test_halfspace_matches_weighted_reduced_cost(args):
    z, c_tilde, lam = args
    h = HalfspaceLambda.from_reduced_cost(z, c_tilde)
    w = np.append(lam, 1.0 - c_tilde @ lam)
    assert np.isclose(h.value(lam), w @ z, atol=1e-9 * (1 + np.abs(z).sum() * 200))
    assert np.isclose(h.complement().value(lam), -h.value(lam))


@given(st.integers(1, 7).flatmap(lambda k: st.tuples(arrays(float, (k, k), elements=finite),
                                                     vec(k))))
def test_lu_round_trip(args):
    a, rhs = args
    assume(abs(np.linalg.det(a)) > 1e-3 and np.linalg.cond(a) < 1e8)
    f = lu_factorize(a)
    assert np.allclose(f.permutation_matrix @ a, f.lower @ f.upper, atol=1e-9 * (1 + abs(a).max()))
    x = lu_solve(f, rhs)
    assert np.allclose(a @ x, rhs, atol=1e-6 * (1 + np.abs(rhs).max()))
    y = lu_solve_transposed(f, rhs)
    assert np.allclose(a.T @ y, rhs, atol=1e-6 * (1 + np.abs(rhs).max()))


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(2, 4), st.integers(2, 5), st.integers(1, 4), st.booleans())
def test_pivot_feasibility_and_reversal(seed, q, n, m, degen):
    p = (degenerate if degen else nondegenerate)(q, n, m, seed)
    d = materialize(p, tuple(range(n, n + m)))
    for j in d.nonbasis:
        i = leaving_variable(d, j)
        if i is None:
            continue
        d2 = pivot(p, d, j, i)
        # minimum ratio keeps the dictionary primal feasible
        assert d2.is_primal_feasible()
        back = pivot(p, d2, i, j)
        assert back.basis == d.basis
        assert np.allclose(back.binv_b, d.binv_b, atol=1e-8)
        assert np.allclose(back.reduced_costs, d.reduced_costs, atol=1e-6)


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(2, 3), st.integers(2, 5), st.integers(1, 5), st.booleans())
def test_solution_is_feasible_and_optimal_on_cells(seed, q, n, m, degen):
    p = (degenerate if degen else nondegenerate)(q, n, m, seed)
    try:
        sol = solve(p)
    except NoSolution:
        return
    a, b = p.constraint_matrix, p.rhs
    for x in sol.points:
        assert np.all(x >= -1e-9) and np.all(a @ x <= b + 1e-7 * (1 + np.abs(b).max()))
    for x in sol.directions:
        assert np.all(x >= -1e-9) and np.all(a @ x <= 1e-7 * (1 + np.abs(a).max()))
    assert np.allclose(sol.points @ p.objective, sol.point_images)
    _, pm = prepare(p)
    for cell in sol.cells:
        if cell.witness is None:
            continue
        w = sol.weight(cell.witness)
        res = scalarlp.solve_lp(weighted_lp(p, w))
        assert res.status == scalarlp.OPTIMAL
        assert np.isclose(res.objective_value, sol.point_images[cell.point_index] @ w,
                          rtol=1e-6, atol=1e-6)
        assert pm.contains(cell.witness, 1e-9)


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_init_routes_agree(seed):
    p = nondegenerate(3, 4, 3, seed)
    try:
        a = solve(p, init="p0")
    except NoSolution:
        return
    b = solve(p, init="perturb")
    key = lambda s: {tuple(np.round(v, 6)) for v in s.point_images}
    assert key(a) == key(b)
