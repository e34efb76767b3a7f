import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bocklift.errors import DimensionMismatch
from bocklift.ring_linalg import (
    ResidueMatrix,
    ResidueVector,
    howell_form,
    howell_transform,
    in_row_span,
    int_product,
    inverse_mod,
    kernel_basis_mod,
    mat_mul_mod,
    module_invariants,
    rank_mod2,
    solve_mod,
    two_adic_level,
    valuation,
)

from oracles import kernel, row_span, solvable, torsion_counts


@st.composite
def small_matrices(draw, max_rows=3, max_cols=3, max_e=3):
    e = draw(st.integers(1, max_e))
    rows = draw(st.integers(0, max_rows))
    cols = draw(st.integers(0, max_cols))
    entries = draw(
        st.lists(st.integers(0, (1 << e) - 1), min_size=rows * cols, max_size=rows * cols)
    )
    return ResidueMatrix(np.array(entries, dtype=np.int64).reshape(rows, cols), e, cols=cols)


def test_valuation():
    assert valuation(1) == 0
    assert valuation(12) == 2
    assert valuation(0, cap=5) == 5


def test_residue_matrix_reduces_and_is_read_only():
    M = ResidueMatrix([[5, -1]], 2)
    assert M.tolist() == [[1, 3]]
    with pytest.raises(ValueError):
        M.array[0, 0] = 2


def test_residue_vector_equality_tracks_exponent():
    assert ResidueVector([1, 0], 1) == ResidueVector([3, 2], 1)
    assert ResidueVector([1, 0], 1) != ResidueVector([1, 0], 2)


def test_mat_mul_examples():
    A = ResidueMatrix([[1, 1, 1]], 2)
    B = ResidueMatrix([[1], [1], [1]], 2)
    assert mat_mul_mod(A, B, 2).tolist() == [[3]]
    ham = ResidueMatrix(
        [[0, 0, 0, 1, 1, 1, 1], [0, 1, 1, 0, 0, 1, 1], [1, 0, 1, 0, 1, 0, 1]], 1
    )
    prod = mat_mul_mod(ham, ham.T, 3)
    assert np.array_equal(np.diag(prod.array), [4, 4, 4])
    assert prod.array[0, 1] == prod.array[0, 2] == prod.array[1, 2] == 2
    empty = mat_mul_mod(A, ResidueMatrix.zeros(3, 0, 2), 2)
    assert empty.shape == (1, 0)


def test_mat_mul_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        mat_mul_mod(ResidueMatrix([[1, 1]], 1), ResidueMatrix([[1, 1]], 1), 1)


def test_int_product_exact_for_large_entries():
    big = (1 << 30) - 1
    a = np.array([[big] * 8])
    prod = int_product(a, a.T)
    assert int(prod[0, 0]) == 8 * big * big


def test_two_adic_level_examples():
    assert two_adic_level([[4, 2], [2, 4]], 8) == 1
    assert two_adic_level(np.zeros((2, 2), dtype=np.int64), 8) == 8
    assert two_adic_level([[8, 8], [8, 8]], 8) == 3


def test_howell_examples():
    H, _ = howell_form(ResidueMatrix([[2]], 2))
    assert H.tolist() == [[2]]
    H, _ = howell_form(ResidueMatrix([[1, 1], [1, 3]], 2))
    assert H.tolist() == [[1, 1], [0, 2]]
    H, _ = howell_form(ResidueMatrix.identity(3, 3))
    assert H.tolist() == np.eye(3, dtype=int).tolist()


def test_howell_form_can_grow():
    H, _ = howell_form(ResidueMatrix([[2, 1]], 2))
    assert H.tolist() == [[2, 1], [0, 2]]


def test_solve_examples():
    x = solve_mod(ResidueMatrix([[1, 1, 1, 1]], 1), ResidueVector([1], 1))
    assert x is not None and int(x.array.sum()) % 2 == 1
    A = ResidueMatrix([[1, 1, 0, 0], [0, 1, 1, 0], [1, 0, 1, 0]], 1)
    assert solve_mod(A, ResidueVector([1, 1, 1], 1)) is None
    assert solve_mod(ResidueMatrix([[2]], 2), ResidueVector([1], 2)) is None


def test_solve_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        solve_mod(ResidueMatrix([[1]], 1), ResidueVector([1, 0], 1))


def test_kernel_examples():
    K = kernel_basis_mod(ResidueMatrix([[1, 1]], 1))
    assert row_span(K.array, 2, 1) == {(0, 0), (1, 1)}
    A = ResidueMatrix([[1, 1, 0, 0], [0, 1, 1, 0], [1, 0, 1, 0]], 1)
    K = kernel_basis_mod(A)
    assert row_span(K.array, 4, 1) == row_span([[1, 1, 1, 0], [0, 0, 0, 1]], 4, 1)
    K = kernel_basis_mod(ResidueMatrix([[2, 2]], 2))
    assert row_span(K.array, 2, 2) == row_span([[1, 1], [2, 0]], 2, 2)


def test_module_invariant_examples():
    assert module_invariants(ResidueMatrix.zeros(0, 2, 1)) == [1, 1]
    assert module_invariants(ResidueMatrix([[1, 1, 0], [0, 1, 1]], 1)) == [1]
    assert module_invariants(ResidueMatrix([[2]], 2)) == [1]


def test_rank_mod2_ignores_even_entries():
    assert rank_mod2(np.array([[2, 4], [1, 3]])) == 1


def test_inverse_mod():
    A = ResidueMatrix([[1, 2], [3, 1]], 3)
    inv = inverse_mod(A)
    assert mat_mul_mod(A, inv, 3) == ResidueMatrix.identity(2, 3)
    assert inverse_mod(ResidueMatrix([[2, 0], [0, 1]], 2)) is None


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_howell_span_and_transform(A):
    H, U = howell_form(A)
    n, e = A.cols, A.exponent
    assert row_span(H.array, n, e) == row_span(A.array, n, e)
    if A.rows:
        assert mat_mul_mod(U, A, e) == H
    W, T = howell_transform(A)
    padded = np.vstack([A.array, np.zeros((A.cols, A.cols), dtype=np.int64)])
    assert np.array_equal((T.array @ padded) % A.modulus, W.array)
    assert rank_mod2(T.array) == T.rows


@settings(max_examples=150, deadline=None)
@given(small_matrices(), st.randoms(use_true_random=False))
def test_howell_is_canonical(A, rnd):
    H, _ = howell_form(A)
    perm = list(range(A.rows))
    rnd.shuffle(perm)
    shuffled = ResidueMatrix(A.array[perm] if A.rows else A.array, A.exponent, cols=A.cols)
    H2, _ = howell_form(shuffled)
    assert H == H2
    assert howell_form(H)[0] == H if H.rows else True


@settings(max_examples=150, deadline=None)
@given(small_matrices(), st.data())
def test_solve_matches_enumeration(A, data):
    b = ResidueVector(
        data.draw(st.lists(st.integers(0, A.modulus - 1), min_size=A.rows, max_size=A.rows)),
        A.exponent,
    )
    x = solve_mod(A, b)
    assert (x is not None) == solvable(A.array, b.array, A.cols, A.exponent)
    if x is not None:
        assert np.array_equal((A.array @ x.array - b.array) % A.modulus, np.zeros(A.rows))


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_kernel_matches_enumeration(A):
    K = kernel_basis_mod(A)
    assert row_span(K.array, A.cols, A.exponent) == kernel(A.array, A.cols, A.exponent)


@settings(max_examples=100, deadline=None)
@given(small_matrices())
def test_module_invariants_match_torsion(A):
    exps = module_invariants(A)
    expected = [int(np.prod([1 << min(x, j) for x in exps])) for j in range(A.exponent + 1)]
    assert torsion_counts(A.array, A.cols, A.exponent) == expected


@settings(max_examples=100, deadline=None)
@given(small_matrices(), st.data())
def test_in_row_span_matches_enumeration(A, data):
    b = data.draw(st.lists(st.integers(0, A.modulus - 1), min_size=A.cols, max_size=A.cols))
    assert in_row_span(A, b) == (tuple(b) in row_span(A.array, A.cols, A.exponent))
