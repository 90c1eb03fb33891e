"""Solvers for ``A v = w`` with crisp A and fuzzy w, v.

Three formulations are provided:

* :func:`friedman_solve` -- one 2n x 2n crisp system ``S v = w``.
* :func:`ezzati_solve` -- ``A g = w_up + w_lo`` then two solves with ``B + C``.
* :func:`embedding_solve` -- the spread system ``(B+C) d = w_up - w_lo`` first;
  a negative entry in ``d`` proves there is no fuzzy solution and the second
  system ``A g = w_up + w_lo`` is never formed. :func:`triangular_embedding_solve`
  is the same method reduced to one crisp solve for the spreads.

Each method is split into a kernel, which does all of the linear algebra and
works on any number type, and :func:`_finish`, which classifies the result in
plain floats. The operation counter in :mod:`fsle.opcount` runs the kernels on
an instrumented number type.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .fuzzy import (
    DEFAULT_TOL,
    AffineZ,
    Endpoint,
    FuzzyNumber,
    FuzzyVector,
    SampledZ,
    TriangularFuzzy,
    default_grid,
    fuzzy_residual,
    parametric_to_triangular,
    triangular_to_parametric,
    validate_fuzzy_number,
)
from .linalg import SingularMatrixError, lu_factor, matmul, solve_columns
from .splitting import build_s, split_bc

NO_SOLUTION_MESSAGE = "The system does not have fuzzy number vector solution"


class Method(enum.Enum):
    FRIEDMAN = "Friedman"
    EZZATI = "Ezzati"
    EMBEDDING = "Embedding"
    EMBEDDING_TRIANGULAR = "EmbeddingTriangular"


class Status(enum.Enum):
    STRONG = "Strong"
    WEAK = "Weak"
    NOT_FUZZY = "NotFuzzy"
    REJECTED_EARLY = "RejectedEarly"
    SINGULAR = "SingularMatrix"


class WeakRule(enum.Enum):
    """How a weak candidate is built from an invalid raw solution.

    FRIEDMAN takes min/max over ``lo(z), up(z), lo(1), up(1)``; EZZATI drops
    ``up(1)`` from the lower envelope and ``lo(1)`` from the upper one.
    """

    FRIEDMAN = "friedman"
    EZZATI = "ezzati"


class NotTriangularError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Problem and report types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Basis:
    """Coordinates used to store a vector of endpoint functions as crisp rows.

    Affine endpoints are stored as ``[const, slope]``; sampled endpoints as
    their values on ``grid``. All solver arithmetic is linear, so it acts on
    these rows column by column.
    """

    grid: tuple[float, ...] | None = None

    @property
    def affine(self) -> bool:
        return self.grid is None

    def rows(self, endpoints: Sequence[Endpoint]) -> list[list[float]]:
        if self.grid is None:
            return [[e.const_term, e.slope] for e in endpoints]
        return [list(e.at(self.grid)) for e in endpoints]

    def endpoints(self, rows: Sequence[Sequence]) -> tuple[Endpoint, ...]:
        if self.grid is None:
            return tuple(AffineZ(float(c), float(s)) for c, s in rows)
        return tuple(SampledZ(self.grid, tuple(float(x) for x in r)) for r in rows)

    def extremes(self, row: Sequence) -> list:
        """Values whose minimum is the minimum of the function over [0, 1]."""
        if self.grid is None:
            c, s = row
            return [c, c + s]
        return list(row)


@dataclass(frozen=True)
class FSLEProblem:
    """Crisp n x n matrix ``A`` and fuzzy right-hand side ``w``.

    If any endpoint in ``w`` is sampled, every sampled endpoint must use the
    same grid; affine endpoints are then resampled onto it.
    """

    A: tuple[tuple[float, ...], ...]
    w: FuzzyVector

    def __post_init__(self):
        A = tuple(tuple(float(x) for x in row) for row in self.A)
        n = len(A)
        if n == 0 or any(len(row) != n for row in A):
            raise ValueError("coefficient matrix must be square and non-empty")
        if not np.all(np.isfinite(A)):
            raise ValueError("coefficient matrix has non-finite entries")
        if len(self.w) != n:
            raise ValueError(f"right-hand side has {len(self.w)} entries, matrix is {n}x{n}")
        grids = {
            f.grid for p in self.w for f in (p.lower, p.upper) if isinstance(f, SampledZ)
        }
        if len(grids) > 1:
            raise ValueError("sampled right-hand side entries must share one grid")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "w", tuple(self.w))

    @classmethod
    def from_triangular(cls, A, triples: Sequence[tuple[float, float, float]]) -> FSLEProblem:
        return cls(A, tuple(triangular_to_parametric(TriangularFuzzy(*t)) for t in triples))

    @property
    def n(self) -> int:
        return len(self.A)

    @property
    def basis(self) -> Basis:
        for p in self.w:
            for f in (p.lower, p.upper):
                if isinstance(f, SampledZ):
                    return Basis(f.grid)
        return Basis()

    def rhs_rows(self) -> tuple[list[list[float]], list[list[float]]]:
        basis = self.basis
        return basis.rows([p.lower for p in self.w]), basis.rows([p.upper for p in self.w])

    def triangular(self, tol: float = DEFAULT_TOL):
        """Right-hand side as triangular numbers, or None if any entry is not triangular."""
        out = [parametric_to_triangular(p, tol) for p in self.w]
        return None if any(t is None for t in out) else out


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one solve.

    ``solution`` is the raw solution for Strong and the repaired candidate for
    Weak. ``raw`` is the pair ``(lower, upper)`` before classification. ``d``
    and ``g`` are the spread and sum vectors where the method forms them;
    ``spread_coefficients`` is the crisp vector ``d'`` with ``d = d'(1-z)`` on
    the triangular path.
    """

    method: Method
    status: Status
    solution: FuzzyVector | None = None
    raw: tuple[tuple[Endpoint, ...], tuple[Endpoint, ...]] | None = None
    weak_solution: FuzzyVector | None = None
    d: tuple[Endpoint, ...] | None = None
    g: tuple[Endpoint, ...] | None = None
    spread_coefficients: tuple[float, ...] | None = None
    residual: float | None = None
    multiplications: int | None = None
    message: str = ""

    @property
    def raw_solution(self) -> FuzzyVector | None:
        if self.raw is None:
            return None
        return tuple(FuzzyNumber(lo, up) for lo, up in zip(*self.raw))


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


def weak_candidate(
    lower: Endpoint, upper: Endpoint, grid: Sequence[float], rule: WeakRule = WeakRule.FRIEDMAN
) -> FuzzyNumber:
    """Pointwise min/max repair of a raw pair; piecewise affine, so stored sampled."""
    grid = tuple(grid)
    lo, up = lower.at(grid), upper.at(grid)
    lo1, up1 = lower.end, upper.end
    if rule is WeakRule.FRIEDMAN:
        new_lo = np.minimum.reduce([lo, up, np.full_like(lo, lo1), np.full_like(lo, up1)])
        new_up = np.maximum.reduce([lo, up, np.full_like(lo, up1), np.full_like(lo, lo1)])
    else:
        new_lo = np.minimum.reduce([lo, up, np.full_like(lo, lo1)])
        new_up = np.maximum.reduce([lo, up, np.full_like(lo, up1)])
    return FuzzyNumber(SampledZ(grid, tuple(new_lo)), SampledZ(grid, tuple(new_up)))


def classify(
    lower: Sequence[Endpoint],
    upper: Sequence[Endpoint],
    grid: Sequence[float] | None = None,
    rule: WeakRule | None = WeakRule.FRIEDMAN,
    tol: float = DEFAULT_TOL,
) -> tuple[Status, FuzzyVector | None]:
    """Strong if every raw pair is already a fuzzy number.

    Otherwise the weak candidate is built with ``rule`` and the result is Weak
    when the candidate is a valid fuzzy vector, NotFuzzy when it is not. With
    ``rule=None`` no repair is attempted and any invalid pair gives NotFuzzy.
    """
    grid = tuple(grid) if grid is not None else default_grid()
    raw = [FuzzyNumber(lo, up) for lo, up in zip(lower, upper)]
    if all(validate_fuzzy_number(p, grid, tol).valid for p in raw):
        return Status.STRONG, tuple(raw)
    if rule is None:
        return Status.NOT_FUZZY, None
    candidate = tuple(weak_candidate(p.lower, p.upper, grid, rule) for p in raw)
    if all(validate_fuzzy_number(p, grid, tol).valid for p in candidate):
        return Status.WEAK, candidate
    return Status.NOT_FUZZY, candidate


# ---------------------------------------------------------------------------
# Kernels: pure linear algebra on any number type
# ---------------------------------------------------------------------------


@dataclass
class RawResult:
    lower: list | None = None
    upper: list | None = None
    d: list | None = None
    g: list | None = None
    spread_coefficients: list | None = None
    rejected: bool = False
    singular: str = ""


def _add_rows(X, Y):
    return [[x + y for x, y in zip(rx, ry)] for rx, ry in zip(X, Y)]


def _sub_rows(X, Y):
    return [[x - y for x, y in zip(rx, ry)] for rx, ry in zip(X, Y)]


def _half_rows(X):
    return [[0.5 * x for x in r] for r in X]


def _has_negative(rows, basis: Basis, tol: float) -> bool:
    return any(float(v) < -tol for r in rows for v in basis.extremes(r))


def friedman_kernel(A, w_lo, w_up, basis: Basis, tol: float) -> RawResult:
    n = len(A)
    S = build_s(split_bc(A))
    rhs = [list(r) for r in w_lo] + [[-x for x in r] for r in w_up]
    try:
        F = lu_factor(S)
    except SingularMatrixError:
        return RawResult(singular="S = [[B, C], [C, B]] is singular")
    x = solve_columns(F, rhs)
    return RawResult(lower=x[:n], upper=[[-v for v in r] for r in x[n:]])


def ezzati_kernel(A, w_lo, w_up, basis: Basis, tol: float) -> RawResult:
    split = split_bc(A)
    try:
        K = lu_factor(A)
    except SingularMatrixError:
        return RawResult(singular="A is singular")
    g = solve_columns(K, _add_rows(w_up, w_lo))
    try:
        M = lu_factor(split.B_plus_C)
    except SingularMatrixError:
        return RawResult(g=g, singular="B + C is singular")
    Cg = matmul(split.C, g)
    lower = solve_columns(M, _add_rows(w_lo, Cg))
    upper = solve_columns(M, _add_rows(w_up, Cg))
    return RawResult(lower=lower, upper=upper, g=g)


def embedding_kernel(A, w_lo, w_up, basis: Basis, tol: float) -> RawResult:
    split = split_bc(A)
    try:
        M = lu_factor(split.B_plus_C)
    except SingularMatrixError:
        return RawResult(singular="B + C is singular")
    d = solve_columns(M, _sub_rows(w_up, w_lo))
    if _has_negative(d, basis, tol):
        return RawResult(d=d, rejected=True)
    try:
        K = lu_factor(A)
    except SingularMatrixError:
        return RawResult(d=d, singular="A is singular")
    g = solve_columns(K, _add_rows(w_up, w_lo))
    return RawResult(
        lower=_half_rows(_sub_rows(g, d)), upper=_half_rows(_add_rows(g, d)), d=d, g=g
    )


def triangular_kernel(A, w_lo, w_up, spreads, tol: float) -> RawResult:
    """Embedding method with the spread system reduced to ``(B+C) d' = mu + rho``."""
    split = split_bc(A)
    try:
        M = lu_factor(split.B_plus_C)
    except SingularMatrixError:
        return RawResult(singular="B + C is singular")
    dc = [r[0] for r in solve_columns(M, [[s] for s in spreads])]
    d = [[x, -x] for x in dc]
    if any(float(x) < -tol for x in dc):
        return RawResult(d=d, spread_coefficients=dc, rejected=True)
    try:
        K = lu_factor(A)
    except SingularMatrixError:
        return RawResult(d=d, spread_coefficients=dc, singular="A is singular")
    g = solve_columns(K, _add_rows(w_up, w_lo))
    return RawResult(
        lower=_half_rows(_sub_rows(g, d)),
        upper=_half_rows(_add_rows(g, d)),
        d=d,
        g=g,
        spread_coefficients=dc,
    )


# ---------------------------------------------------------------------------
# Public solvers
# ---------------------------------------------------------------------------


_DEFAULT_RULE = {
    Method.FRIEDMAN: WeakRule.FRIEDMAN,
    Method.EZZATI: WeakRule.EZZATI,
    Method.EMBEDDING: None,
    Method.EMBEDDING_TRIANGULAR: None,
}


def _finish(
    method: Method,
    problem: FSLEProblem,
    raw: RawResult,
    basis: Basis,
    grid: Sequence[float] | None,
    tol: float,
    weak_rule: WeakRule | None,
) -> SolveReport:
    grid = tuple(grid) if grid is not None else default_grid()
    d = basis.endpoints(raw.d) if raw.d is not None else None
    g = basis.endpoints(raw.g) if raw.g is not None else None
    dc = tuple(float(x) for x in raw.spread_coefficients) if raw.spread_coefficients is not None else None
    common = dict(method=method, d=d, g=g, spread_coefficients=dc)
    if raw.singular:
        return SolveReport(status=Status.SINGULAR, message=raw.singular, **common)
    if raw.rejected:
        return SolveReport(status=Status.REJECTED_EARLY, message=NO_SOLUTION_MESSAGE, **common)

    lower, upper = basis.endpoints(raw.lower), basis.endpoints(raw.upper)
    raw_vec = tuple(FuzzyNumber(lo, up) for lo, up in zip(lower, upper))
    residual = fuzzy_residual(problem.A, raw_vec, problem.w, grid)
    status, candidate = classify(lower, upper, grid, weak_rule, tol)
    report = SolveReport(raw=(lower, upper), residual=residual, status=status, **common)
    if residual > tol:
        return replace(
            report,
            status=Status.NOT_FUZZY,
            message=f"raw solution misses the system by {residual:.3g} (tolerance {tol:g})",
        )
    if status is Status.STRONG:
        return replace(report, solution=candidate)
    if status is Status.WEAK:
        return replace(report, solution=candidate, weak_solution=candidate)
    return replace(report, message=NO_SOLUTION_MESSAGE)


def _run(
    method: Method,
    kernel: Callable,
    problem: FSLEProblem,
    grid,
    tol: float,
    weak_rule: WeakRule | None,
) -> SolveReport:
    basis = problem.basis
    w_lo, w_up = problem.rhs_rows()
    raw = kernel([list(r) for r in problem.A], w_lo, w_up, basis, tol)
    return _finish(method, problem, raw, basis, grid, tol, weak_rule)


def friedman_solve(
    problem: FSLEProblem,
    grid: Sequence[float] | None = None,
    tol: float = DEFAULT_TOL,
    weak_rule: WeakRule | None = WeakRule.FRIEDMAN,
) -> SolveReport:
    """Solve the 2n x 2n system ``S (v_lo, -v_up) = (w_lo, -w_up)`` and classify."""
    return _run(Method.FRIEDMAN, friedman_kernel, problem, grid, tol, weak_rule)


def ezzati_solve(
    problem: FSLEProblem,
    grid: Sequence[float] | None = None,
    tol: float = DEFAULT_TOL,
    weak_rule: WeakRule | None = WeakRule.EZZATI,
) -> SolveReport:
    """``g = A^-1 (w_up + w_lo)``, then ``v = (B+C)^-1 (w + C g)`` for each endpoint."""
    return _run(Method.EZZATI, ezzati_kernel, problem, grid, tol, weak_rule)


def embedding_solve(
    problem: FSLEProblem,
    grid: Sequence[float] | None = None,
    tol: float = DEFAULT_TOL,
) -> SolveReport:
    """Spread system first, reject on a negative spread, then the sum system.

    The solution is ``v_lo = (g - d) / 2`` and ``v_up = (g + d) / 2``. A raw
    solution that fails validation is reported NotFuzzy; no weak repair is
    attempted. Entries of ``d`` in ``[-tol, 0)`` count as zero.
    """
    return _run(Method.EMBEDDING, embedding_kernel, problem, grid, tol, None)


def triangular_embedding_solve(
    problem: FSLEProblem,
    grid: Sequence[float] | None = None,
    tol: float = DEFAULT_TOL,
) -> SolveReport:
    """Embedding method for a triangular right-hand side.

    The spread system collapses to one crisp solve ``(B+C) d' = mu + rho``
    and ``d(z) = d' (1 - z)``.

    Raises:
        NotTriangularError: some entry of ``w`` is not triangular.
    """
    spreads = triangular_spreads(problem, tol)
    w_lo, w_up = Basis().rows([p.lower for p in problem.w]), Basis().rows([p.upper for p in problem.w])
    raw = triangular_kernel([list(r) for r in problem.A], w_lo, w_up, spreads, tol)
    return _finish(Method.EMBEDDING_TRIANGULAR, problem, raw, Basis(), grid, tol, None)


def triangular_spreads(problem: FSLEProblem, tol: float = DEFAULT_TOL) -> list[float]:
    tri = problem.triangular(tol)
    if tri is None:
        raise NotTriangularError("right-hand side is not a vector of triangular fuzzy numbers")
    return [t.total_spread for t in tri]


def solve_auto(
    problem: FSLEProblem,
    grid: Sequence[float] | None = None,
    tol: float = DEFAULT_TOL,
) -> SolveReport:
    """Triangular path when every ``w_i`` is triangular, general embedding otherwise."""
    if problem.triangular(tol) is not None:
        return triangular_embedding_solve(problem, grid, tol)
    return embedding_solve(problem, grid, tol)
