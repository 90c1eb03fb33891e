import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from fsle import SingularMatrixError, block_inverse, build_s, inverse, split_bc
from fsle.splitting import assemble_blocks

from conftest import EXAMPLE1_A, EXAMPLE3_A

int_matrices = st.integers(1, 6).flatmap(
    lambda n: arrays(np.int64, (n, n), elements=st.integers(-9, 9))
)


def s_by_index_rule(A):
    """S built entry by entry from the sign rule on a_ij, independently of the blocks."""
    n = len(A)
    S = [[0.0] * (2 * n) for _ in range(2 * n)]
    for i, j in itertools.product(range(n), repeat=2):
        a = A[i][j]
        if a >= 0:
            S[i][j] = S[i + n][j + n] = a
        else:
            S[i][j + n] = S[i + n][j] = -a
    return S


def test_split_example1():
    split = split_bc(EXAMPLE1_A)
    assert split.B == [[1, 0], [1, 3]]
    assert split.C == [[0, 1], [0, 0]]


def test_split_example3_has_no_negative_part():
    split = split_bc(EXAMPLE3_A)
    assert split.B == EXAMPLE3_A
    assert split.C == [[0, 0], [0, 0]]


def test_split_all_negative():
    A = [[-1, -2], [-3, -4]]
    split = split_bc(A)
    assert split.B == [[0, 0], [0, 0]]
    assert split.C == [[1, 2], [3, 4]]


def test_build_s_example1():
    S = build_s(split_bc(EXAMPLE1_A))
    assert S == [[1, 0, 0, 1], [1, 3, 0, 0], [0, 1, 1, 0], [0, 0, 1, 3]]
    assert S == s_by_index_rule(EXAMPLE1_A)


def test_build_s_without_negative_part_is_block_diagonal():
    S = np.array(build_s(split_bc(EXAMPLE3_A)))
    assert np.array_equal(S[:2, :2], EXAMPLE3_A) and np.array_equal(S[2:, 2:], EXAMPLE3_A)
    assert not S[:2, 2:].any() and not S[2:, :2].any()


def test_build_s_scalar_negative():
    assert build_s(split_bc([[-2]])) == [[0, 2], [2, 0]]


def test_block_inverse_example1():
    # average and halve the two inverses of this system, in exact arithmetic
    P = [[Fraction(3, 2), Fraction(-1, 2)], [Fraction(-1, 2), Fraction(1, 2)]]
    Q = [[Fraction(3, 4), Fraction(1, 4)], [Fraction(-1, 4), Fraction(1, 4)]]
    D_exact = [[(p + q) / 2 for p, q in zip(rp, rq)] for rp, rq in zip(P, Q)]
    E_exact = [[(p - q) / 2 for p, q in zip(rp, rq)] for rp, rq in zip(P, Q)]
    assert D_exact == [[Fraction(9, 8), Fraction(-1, 8)], [Fraction(-3, 8), Fraction(3, 8)]]
    assert E_exact == [[Fraction(3, 8), Fraction(-3, 8)], [Fraction(-1, 8), Fraction(1, 8)]]

    split = split_bc(EXAMPLE1_A)
    D, E = block_inverse(split)
    np.testing.assert_allclose(D, np.array(D_exact, dtype=float), atol=1e-15)
    np.testing.assert_allclose(E, np.array(E_exact, dtype=float), atol=1e-15)
    S = np.array(build_s(split))
    np.testing.assert_allclose(np.array(assemble_blocks(D, E)) @ S, np.eye(4), atol=1e-12)


def test_block_inverse_without_negative_part():
    D, E = block_inverse(split_bc(EXAMPLE3_A))
    np.testing.assert_allclose(D, inverse(EXAMPLE3_A), atol=1e-15)
    np.testing.assert_allclose(E, np.zeros((2, 2)), atol=1e-15)


def _find_nonsingular_a_with_singular_abs():
    for n in (2, 3):
        for entries in itertools.product(range(-2, 3), repeat=n * n):
            A = np.array(entries).reshape(n, n)
            if round(np.linalg.det(A)) != 0 and round(np.linalg.det(np.abs(A))) == 0:
                return A
    raise AssertionError("search found no instance")


def test_block_inverse_singular_when_b_plus_c_singular():
    A = _find_nonsingular_a_with_singular_abs()
    assert np.linalg.matrix_rank(A) == len(A)
    with pytest.raises(SingularMatrixError):
        block_inverse(split_bc(A.tolist()))
    with pytest.raises(SingularMatrixError):
        inverse(build_s(split_bc(A.tolist())))


@given(int_matrices)
def test_split_reassembles_with_disjoint_support(A):
    split = split_bc(A.tolist())
    B, C = np.array(split.B), np.array(split.C)
    assert np.array_equal(B - C, A)
    assert (B >= 0).all() and (C >= 0).all()
    assert not (B * C).any()


@given(int_matrices)
def test_s_is_nonnegative_and_places_each_entry_once(A):
    n = len(A)
    S = np.array(build_s(split_bc(A.tolist())))
    assert S.shape == (2 * n, 2 * n) and (S >= 0).all()
    assert S.tolist() == s_by_index_rule(A.tolist())
    for i, j in itertools.product(range(n), repeat=2):
        placed = (S[i, j] != 0) + (S[i, j + n] != 0)
        assert placed == (A[i, j] != 0)


@given(int_matrices)
def test_block_form_inverts_s(A):
    a = A.astype(float)
    if abs(np.linalg.det(a)) < 0.5 or abs(np.linalg.det(np.abs(a))) < 0.5:
        return
    split = split_bc(A.tolist())
    D, E = block_inverse(split)
    product = np.array(assemble_blocks(D, E)) @ np.array(build_s(split), dtype=float)
    assert np.max(np.abs(product - np.eye(2 * len(A)))) <= 1e-9
