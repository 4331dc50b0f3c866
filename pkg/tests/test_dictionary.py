from __future__ import annotations

import numpy as np
import pytest

from paravec.dictionary import (basic_solution, extract_direction, leaving_variable, materialize,
                                optimality_halfspace, pivot)
from paravec.errors import PreconditionViolated, SingularBasis
from paravec.model import param_w, prepare

from instances import ex51, ex61, paper_basis


@pytest.fixture
def ex():
    return prepare(ex51())


def test_initial_dictionary_ex51(ex):
    p, _ = ex
    d = materialize(p, paper_basis(1, 5))
    assert np.allclose(d.binv_b, [5, 4])
    # nonbasis in the order (4, 2, 3) of the worked dictionary
    cols = [d.column_of(j - 1) for j in (4, 2, 3)]
    assert np.allclose(d.binv_n[:, cols], [[1, 1, 0], [-1, 1, -1]])


def test_basic_solutions(ex):
    p, _ = ex
    assert np.allclose(basic_solution(materialize(p, paper_basis(1, 5))), [5, 0, 0])
    assert np.allclose(basic_solution(materialize(p, paper_basis(1, 2))), [1, 4, 0])
    assert np.allclose(basic_solution(materialize(p, paper_basis(2, 4))), [0, 4.5, 0])
    q, _ = prepare(ex61())
    assert np.allclose(basic_solution(materialize(q, paper_basis(1, 5, 6))), [4, 0, 0])


def test_slack_dictionary(ex):
    p, _ = ex
    d = materialize(p, (3, 4))
    assert np.allclose(d.binv_b, p.rhs)
    assert np.allclose(d.binv_n, p.constraint_matrix)
    assert np.allclose(d.reduced_costs, -p.objective)


def test_optimality_halfspaces_ex51(ex):
    p, pm = ex
    d = materialize(p, paper_basis(1, 5))
    h2 = optimality_halfspace(d, 1, pm)
    h3 = optimality_halfspace(d, 2, pm)
    h4 = optimality_halfspace(d, 3, pm)
    assert np.allclose(h2.normal, [1, -1]) and h2.offset == pytest.approx(0)
    assert np.allclose(h3.normal, [1, 2]) and h3.offset == pytest.approx(-1)
    assert np.allclose(h4.normal, [1, 0]) and h4.offset == pytest.approx(0)


def test_leaving_rule(ex):
    p, _ = ex
    d0 = materialize(p, paper_basis(1, 5))
    assert leaving_variable(d0, 1) == 4
    assert leaving_variable(d0, 2) is None
    d1 = materialize(p, paper_basis(1, 2))
    assert leaving_variable(d1, 2) == 0


def test_pivots(ex):
    p, _ = ex
    d0 = materialize(p, paper_basis(1, 5))
    d1 = pivot(p, d0, 1, 4)
    assert d1.basis == paper_basis(1, 2)
    assert np.allclose(basic_solution(d1), [1, 4, 0])
    d3 = pivot(p, d1, 3, 0)
    assert d3.basis == paper_basis(2, 4)
    assert np.allclose(basic_solution(d3), [0, 4.5, 0])
    assert pivot(p, d1, 4, 1).basis == d0.basis


def test_bad_pivot_rejected(ex):
    p, _ = ex
    d0 = materialize(p, paper_basis(1, 5))
    with pytest.raises(PreconditionViolated):
        pivot(p, d0, 2, 4)  # column entry is -1
    with pytest.raises(PreconditionViolated):
        d0.column_of(0)
    with pytest.raises(PreconditionViolated):
        d0.row_of(1)


def test_singular_basis(ex):
    p, _ = ex
    with pytest.raises(SingularBasis):
        materialize(p, (2, 4))  # x3 and x5 columns are (0,-1) and (0,1)


def test_direction_extraction(ex):
    p, _ = ex
    d0 = materialize(p, paper_basis(1, 5))
    dm = extract_direction(d0, 2)
    assert np.allclose(dm.structural, [0, 0, 1])
    assert np.allclose(dm.image, [0, -1, 1])
    assert np.allclose(p.objective.T @ dm.structural, dm.image)
    assert np.all(p.augmented_matrix @ dm.direction == 0)
    with pytest.raises(PreconditionViolated):
        extract_direction(d0, 1)


def test_objective_consistency(ex):
    p, pm = ex
    rng = np.random.default_rng(0)
    for basis in [paper_basis(1, 5), paper_basis(1, 2), paper_basis(2, 3), paper_basis(2, 4)]:
        d = materialize(p, basis)
        x = basic_solution(d)
        for lam in rng.uniform(0, 0.5, size=(5, 2)):
            w = param_w(pm, lam)
            assert w @ d.xi_coeffs == pytest.approx(w @ (p.objective.T @ x), abs=1e-8)


def test_basic_reduced_costs_vanish(ex):
    p, _ = ex
    d = materialize(p, paper_basis(2, 3))
    full = p.augmented_matrix
    from paravec.densela import solve
    binv_a = solve(full[:, list(d.basis)], full)
    z = binv_a.T @ p.augmented_objective[list(d.basis)] - p.augmented_objective
    assert np.abs(z[list(d.basis)]).max() <= 1e-9
    assert np.allclose(z[list(d.nonbasis)], d.reduced_costs)
