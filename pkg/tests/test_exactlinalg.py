import random
from fractions import Fraction

import pytest

from singlocus.exactlinalg import (
    SparseEchelon,
    kernel_basis,
    make_primitive,
    mat_det,
    mat_inverse,
    mat_rank,
    normalize_scalar,
    row_space_contains,
    same_row_space,
    solve,
)


def test_rank_identity_and_zero():
    assert mat_rank([[1, 0], [0, 1]]) == 2
    assert mat_rank([[0, 0, 0], [0, 0, 0], [0, 0, 0]]) == 0


def test_rank_of_regular_ad_matrix(ctx_a1):
    # a regular element has an ad-matrix of rank n - rank(g)
    alg = ctx_a1.algebra
    h = alg.basis_element(0)
    assert mat_rank(alg.ad_matrix(h)) == 2


def test_kernel_identity_empty():
    assert kernel_basis([[1, 0], [0, 1]]) == []


def test_kernel_zero_matrix():
    vecs = kernel_basis([[0, 0], [0, 0]])
    assert vecs == [[1, 0], [0, 1]]


def test_kernel_of_cartan_ad(ctx_a1):
    alg = ctx_a1.algebra
    h = alg.basis_element(0)
    vecs = kernel_basis(alg.ad_matrix(h))
    assert vecs == [[1, 0, 0]]


def test_det_examples():
    assert mat_det([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert mat_det([[0, 4], [4, 0]]) == -16
    assert mat_det([[1, 2], [2, 4]]) == 0


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        mat_det([[1, 2, 3], [4, 5, 6]])


def test_det_with_fractions():
    m = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 5), Fraction(1, 7)]]
    expected = Fraction(1, 14) - Fraction(1, 15)
    assert mat_det(m) == expected


def test_rank_nullity_and_det_rank_relation():
    rng = random.Random(123)
    for _ in range(40):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        m = [[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)]
        rank = mat_rank(m)
        assert rank + len(kernel_basis(m)) == cols
        if rows == cols:
            det = mat_det(m)
            assert (det != 0) == (rank == rows)


def test_solve_and_inverse():
    m = [[2, 1], [1, 3]]
    x = solve(m, [5, 10])
    assert [sum(m[i][j] * x[j] for j in range(2)) for i in range(2)] == [5, 10]
    inv = mat_inverse(m)
    assert mat_det(inv) == Fraction(1, mat_det(m))
    assert solve([[1, 1], [1, 1]], [0, 1]) is None


def test_make_primitive():
    assert make_primitive([Fraction(1, 2), Fraction(-1, 4)]) == [2, -1]
    assert make_primitive([Fraction(-2, 3), Fraction(4, 3)]) == [1, -2]
    assert make_primitive([0, 0]) == [0, 0]


def test_row_space_helpers():
    rows = [[1, 0, 1], [0, 1, 1]]
    assert row_space_contains(rows, [1, 1, 2])
    assert not row_space_contains(rows, [0, 0, 1])
    assert same_row_space(rows, [[1, 1, 2], [1, -1, 0]])
    assert not same_row_space(rows, [[1, 0, 0], [0, 1, 0]])


def test_sparse_echelon_span_and_membership():
    ech = SparseEchelon()
    assert ech.insert({1: 2, 5: 4})
    assert ech.insert({1: 1})
    assert not ech.insert({5: Fraction(1, 3)})
    assert len(ech) == 2
    assert ech.contains({1: 7, 5: -2})
    assert not ech.contains({2: 1})
    basis = ech.basis()
    assert [sorted(row) for row in basis] == [[1], [5]]


def test_sparse_echelon_insertion_order_is_irrelevant():
    rng = random.Random(5)
    vectors = [{rng.randint(0, 6): rng.randint(-4, 4) for _ in range(3)} for _ in range(12)]
    vectors = [{k: v for k, v in vec.items() if v} for vec in vectors]
    ech1, ech2 = SparseEchelon(), SparseEchelon()
    for v in vectors:
        ech1.insert(v)
    for v in reversed(vectors):
        ech2.insert(v)
    assert len(ech1) == len(ech2)
    for row in ech1.basis():
        assert ech2.contains(row)


def test_normalize_scalar():
    assert normalize_scalar(Fraction(4, 2)) == 2 and isinstance(normalize_scalar(Fraction(4, 2)), int)
    assert normalize_scalar(Fraction(1, 3)) == Fraction(1, 3)
