"""Dense LU factorization with partial pivoting over generic scalars.

The routines use only ``+ - * /``, ``abs`` and comparisons on matrix
entries, so an instrumented number type can be passed through unchanged to
count multiplications. Matrices are lists of rows.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Sequence

from .fuzzy import AffineZ

Matrix = list[list]


class SingularMatrixError(ArithmeticError):
    """Raised when a pivot falls below the singularity tolerance."""


def as_matrix(A: Sequence[Sequence]) -> Matrix:
    rows = [list(r) for r in A]
    if not rows or any(len(r) != len(rows[0]) for r in rows) or not rows[0]:
        raise ValueError("matrix must be a non-empty rectangular list of rows")
    return rows


def max_abs(A: Sequence[Sequence]) -> float:
    return max(abs(float(x)) for row in A for x in row)


def identity(n: int) -> Matrix:
    return [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    if len(A[0]) != len(B):
        raise ValueError(f"cannot multiply {len(A)}x{len(A[0])} by {len(B)}x{len(B[0])}")
    cols = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in A]


def matvec(A: Sequence[Sequence], x: Sequence) -> list:
    if len(A[0]) != len(x):
        raise ValueError(f"cannot multiply {len(A)}x{len(A[0])} matrix by vector of length {len(x)}")
    return [sum(a * b for a, b in zip(row, x)) for row in A]


@dataclass(frozen=True)
class LUFactorization:
    """``P A = L U`` stored compactly.

    ``lu`` holds the strictly lower part of L (unit diagonal implied) and U;
    ``perm[i]`` is the row of A that ended up in row i.
    """

    lu: tuple[tuple, ...]
    perm: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.perm)

    @property
    def L(self) -> Matrix:
        n = self.n
        return [[self.lu[i][j] if j < i else (1.0 if i == j else 0.0) for j in range(n)] for i in range(n)]

    @property
    def U(self) -> Matrix:
        n = self.n
        return [[self.lu[i][j] if j >= i else 0.0 for j in range(n)] for i in range(n)]

    @property
    def P(self) -> Matrix:
        n = self.n
        return [[1.0 if self.perm[i] == j else 0.0 for j in range(n)] for i in range(n)]


def singularity_tolerance(A: Sequence[Sequence]) -> float:
    return len(A) * sys.float_info.epsilon * max_abs(A)


def lu_factor(A: Sequence[Sequence]) -> LUFactorization:
    """Gaussian elimination with row pivoting.

    Raises:
        ValueError: ``A`` is not square.
        SingularMatrixError: a pivot is smaller than ``n * eps * max|a_ij|``.
    """
    a = as_matrix(A)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError(f"LU needs a square matrix, got {n}x{len(a[0])}")
    tol = singularity_tolerance(a)
    perm = list(range(n))
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(a[i][k]))
        if float(abs(a[p][k])) <= tol:
            raise SingularMatrixError(f"matrix is singular to working precision (pivot {k})")
        if p != k:
            a[k], a[p] = a[p], a[k]
            perm[k], perm[p] = perm[p], perm[k]
        pivot_row = a[k]
        for i in range(k + 1, n):
            row = a[i]
            m = row[k] / pivot_row[k]
            row[k] = m
            for j in range(k + 1, n):
                row[j] = row[j] - m * pivot_row[j]
    return LUFactorization(tuple(tuple(r) for r in a), tuple(perm))


def solve_columns(F: LUFactorization, b: Sequence[Sequence]) -> Matrix:
    """Solve ``A X = B`` for an n x k right-hand side given as rows."""
    n = F.n
    if len(b) != n:
        raise ValueError(f"right-hand side has {len(b)} rows, system has {n}")
    lu = F.lu
    y = [list(b[p]) for p in F.perm]
    k = len(y[0]) if y else 0
    for i in range(n):
        for j in range(i):
            m = lu[i][j]
            y[i] = [y[i][c] - m * y[j][c] for c in range(k)]
    for i in reversed(range(n)):
        for j in range(i + 1, n):
            m = lu[i][j]
            y[i] = [y[i][c] - m * y[j][c] for c in range(k)]
        y[i] = [y[i][c] / lu[i][i] for c in range(k)]
    return y


def solve(F: LUFactorization, b: Sequence):
    """Solve ``A x = b`` for a crisp vector or a vector of :class:`AffineZ`.

    Affine right-hand sides are solved as two crisp columns (constant part
    and slope), which is exact by linearity in z.
    """
    if b and isinstance(b[0], AffineZ):
        x = solve_columns(F, [[e.const_term, e.slope] for e in b])
        return [AffineZ(c, s) for c, s in x]
    return [row[0] for row in solve_columns(F, [[e] for e in b])]


def inverse(A: Sequence[Sequence]) -> Matrix:
    """Explicit inverse via n solves against the identity columns."""
    F = lu_factor(A)
    return solve_columns(F, identity(F.n))
