"""Positive/negative splitting ``A = B - C`` and the 2n x 2n embedding matrix."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .linalg import Matrix, as_matrix, inverse


@dataclass(frozen=True)
class BCSplit:
    """``B`` holds the positive entries of A, ``C`` the magnitudes of the negative ones."""

    B: Matrix
    C: Matrix

    @property
    def n(self) -> int:
        return len(self.B)

    @property
    def B_plus_C(self) -> Matrix:
        """Entrywise ``|A|``."""
        return [[b + c for b, c in zip(rb, rc)] for rb, rc in zip(self.B, self.C)]

    @property
    def A(self) -> Matrix:
        return [[b - c for b, c in zip(rb, rc)] for rb, rc in zip(self.B, self.C)]


def split_bc(A: Sequence[Sequence]) -> BCSplit:
    a = as_matrix(A)
    if any(len(r) != len(a) for r in a):
        raise ValueError("splitting needs a square matrix")
    zero = a[0][0] - a[0][0]
    B = [[x if x > 0 else zero for x in row] for row in a]
    C = [[-x if x < 0 else zero for x in row] for row in a]
    return BCSplit(B, C)


def build_s(split: BCSplit) -> Matrix:
    """Block matrix ``[[B, C], [C, B]]``."""
    top = [rb + rc for rb, rc in zip(split.B, split.C)]
    bottom = [rc + rb for rb, rc in zip(split.B, split.C)]
    return top + bottom


def block_inverse(split: BCSplit) -> tuple[Matrix, Matrix]:
    """Blocks ``D, E`` with ``S^-1 = [[D, E], [E, D]]``.

    ``D = ((B+C)^-1 + A^-1) / 2`` and ``E = ((B+C)^-1 - A^-1) / 2``. Raises
    :class:`~fsle.linalg.SingularMatrixError` if ``B+C`` or ``A`` is singular.
    """
    P = inverse(split.B_plus_C)
    Q = inverse(split.A)
    D = [[(p + q) / 2 for p, q in zip(rp, rq)] for rp, rq in zip(P, Q)]
    E = [[(p - q) / 2 for p, q in zip(rp, rq)] for rp, rq in zip(P, Q)]
    return D, E


def assemble_blocks(D: Matrix, E: Matrix) -> Matrix:
    return [rd + re for rd, re in zip(D, E)] + [re + rd for rd, re in zip(D, E)]
