from pathlib import Path

import numpy as np
import pytest

from fsle import FSLEProblem, FuzzyNumber
from fsle.fuzzy import fuzzy_matvec

DATA = Path(__file__).parent / "data"

EXAMPLE1_A = [[1, -1], [1, 3]]
EXAMPLE2_A = [[1, 1, -1], [1, -2, 1], [2, 1, 3]]
EXAMPLE3_A = [[1, 1], [1, 2]]


def example1() -> FSLEProblem:
    return FSLEProblem(EXAMPLE1_A, (FuzzyNumber.affine((0, 1), (2, -1)), FuzzyNumber.affine((4, 1), (7, -2))))


def example2() -> FSLEProblem:
    return FSLEProblem(
        EXAMPLE2_A,
        (
            FuzzyNumber.affine((0, 1), (2, -1)),
            FuzzyNumber.affine((2, 1), (3, 0)),
            FuzzyNumber.affine((-2, 0), (-1, -1)),
        ),
    )


def example3() -> FSLEProblem:
    return FSLEProblem(EXAMPLE3_A, (FuzzyNumber.affine((0, 4), (6, -2)), FuzzyNumber.affine((0, 5), (8, -3))))


def random_triangular_system(rng, n, dominant=True):
    """Integer matrix with mixed signs and w = A v for a random triangular v."""
    A = rng.integers(-5, 6, size=(n, n)).astype(float)
    if dominant:
        np.fill_diagonal(A, np.abs(A).sum(axis=1) + 1)
    v = [(rng.uniform(-5, 5), rng.uniform(0, 3), rng.uniform(0, 3)) for _ in range(n)]
    v_fuzzy = FSLEProblem.from_triangular(np.eye(n), v).w
    return FSLEProblem(A.tolist(), fuzzy_matvec(A.tolist(), v_fuzzy)), v_fuzzy


@pytest.fixture
def data_dir():
    return DATA
