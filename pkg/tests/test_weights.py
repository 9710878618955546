from fractions import Fraction
from itertools import product

import pytest

from tango_workbench.combinatorics import binom
from tango_workbench.params import TangoParams
from tango_workbench.weights import (GradedWedgeVector, WSpace, admissible_grades, build_dw,
                                     clebsch_gordan_wedge2, expected_w_dim, grade_basis,
                                     grade_dim, hyperplane_basis, is_decomposable_homogeneous,
                                     matrix_rank, sample_wspace, w_dimension, wedge_basis,
                                     wedge_square, wedge_square_mixed, wedge_weight,
                                     wspace_no_decomposable_check, wspace_validate,
                                     zk_nonempty_search)


@pytest.mark.parametrize("n", range(2, 9))
def test_grades_partition_the_basis(n):
    pieces = [pq for k in range(1, 2 * n) for pq in grade_basis(n, k)]
    assert sorted(pieces) == sorted(wedge_basis(n))
    assert len(pieces) == binom(n + 1, 2)
    assert all(grade_dim(n, k) == len(grade_basis(n, k)) for k in range(1, 2 * n))


@pytest.mark.parametrize("n", range(2, 9))
def test_clebsch_gordan_dimension(n):
    # sum of (2j+1)-dimensional irreducibles must give the dimension of the exterior square
    assert sum(h + 1 for h in clebsch_gordan_wedge2(n)) == binom(n + 1, 2)


def test_clebsch_gordan_matches_weight_multiplicities():
    n = 6
    # weight 2k - 2n (k = grade) multiplicities of the exterior square
    mult = {k: grade_dim(n, k) for k in range(1, 2 * n)}
    from_cg = {}
    for h in clebsch_gordan_wedge2(n):
        for w in range(-h, h + 1, 2):
            from_cg[w // 2 + n] = from_cg.get(w // 2 + n, 0) + 1
    assert from_cg == mult


def test_weights_are_constant_on_grades():
    p = TangoParams(4, 3, 2, 1)
    for k in range(1, 8):
        ws = {wedge_weight(p, a, b) for a, b in grade_basis(4, k)}
        assert len(ws) == 1


def test_wedge_square_against_general_formula():
    # homogeneous formula on the z basis vs the full Pluecker expansion
    for n in (3, 4, 5):
        for k in range(1, 2 * n):
            idx = grade_basis(n, k)
            for coeffs in product([0, 1, -2], repeat=len(idx)):
                v = GradedWedgeVector(n, dict(zip(idx, coeffs)))
                assert (not wedge_square(v)) == (not wedge_square_mixed(v))


def test_mixed_grade_rejected():
    v = GradedWedgeVector(4, {(0, 1): 1, (0, 2): 1})
    with pytest.raises(ValueError):
        wedge_square(v)
    with pytest.raises(ValueError):
        GradedWedgeVector(3, {(2, 1): 1})


def test_vector_arithmetic():
    a = GradedWedgeVector.basis(3, 0, 3)
    b = GradedWedgeVector.basis(3, 1, 2)
    s = a + b * Fraction(1, 2)
    assert s.grade() == 3 and not s.is_zero()
    assert (s - s).is_zero()
    assert 2 * a == a + a


def test_matrix_rank_and_hyperplane():
    assert matrix_rank([[1, 2], [2, 4]]) == 1
    assert matrix_rank([[1, 0, 0], [0, 1, 0], [1, 1, 0]]) == 2
    phi = [3, -1, 2]
    h = hyperplane_basis(phi)
    assert len(h) == 2 and matrix_rank(h) == 2
    assert all(sum(Fraction(x) * y for x, y in zip(phi, v)) == 0 for v in h)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_zk_empty_in_one_dimensional_grades(n):
    for k in (1, 2, 2 * n - 2, 2 * n - 1):
        assert grade_dim(n, k) == 1
        assert not zk_nonempty_search(n, k)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_zk_nonempty_in_admissible_grades(n):
    for k in admissible_grades(n):
        assert grade_dim(n, k) >= 2
        assert zk_nonempty_search(n, k, entries=(-1, 1, 2))


def test_wspace_rejects_bad_grade_and_shape():
    with pytest.raises(ValueError):
        WSpace(3, {2: [1]})
    with pytest.raises(ValueError):
        WSpace(3, {3: [1, 2, 3]})
    with pytest.raises(ValueError):
        WSpace(3, {3: [0, 0]})
    with pytest.raises(ValueError):
        WSpace.from_json({"functionals": {}})


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_sampled_wspace_valid(n):
    for seed in range(5):
        w = sample_wspace(n, seed)
        rep = wspace_validate(w)
        assert rep.valid and rep.dim == expected_w_dim(n) == w_dimension(w)
        ev = wspace_no_decomposable_check(w, trials=20, seed=seed)
        assert ev.ok
        assert WSpace.from_json(w.to_json()) == w


def test_sampling_is_deterministic():
    assert sample_wspace(4, 11) == sample_wspace(4, 11)
    assert sample_wspace(4, 11) != sample_wspace(4, 12)


def test_decomposable_witness_named():
    w = WSpace(3, {3: [1, 0]})
    rep = wspace_validate(w)
    assert not rep.valid
    assert rep.decomposable_witnesses == [(3, (1, 2))]
    assert is_decomposable_homogeneous(GradedWedgeVector.basis(3, 1, 2))
    # z_{1,2} lies in W_3 = ker(1, 0)
    assert GradedWedgeVector.basis(3, 1, 2) in w.graded_basis(3)
    assert not wspace_no_decomposable_check(w, trials=5).structural_ok


def test_missing_grade_reported():
    rep = wspace_validate(WSpace(4, {3: [1, 1]}))
    assert rep.missing_grades == [4, 5] and not rep.valid


def test_dw_complement():
    w = sample_wspace(4, 3)
    dw = build_dw(w)
    # W plus D_W spans the whole exterior square
    rows = []
    from tango_workbench.weights import wedge_basis as wb
    index = {pq: j for j, pq in enumerate(wb(4))}
    for v in w.basis() + dw.vectors():
        row = [Fraction(0)] * len(index)
        for pq, c in v.coeffs.items():
            row[index[pq]] = c
        rows.append(row)
    assert len(rows) == binom(5, 2) and matrix_rank(rows) == binom(5, 2)
    assert len(dw.vectors()) == 2 * 4 - 1
