"""Multiplication counts: closed-form MNMO bounds and instrumented measurement.

``formula_counts`` evaluates the maximum-number-of-multiplications formulas
for the three methods under an abstract inversion cost ``h(n)``.
``counted_solve`` runs the real solver kernels on :class:`Counted` numbers and
reports how many multiplications and divisions they actually perform. The
two are different cost models and are never mixed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Sequence

from .fuzzy import DEFAULT_TOL
from .solvers import (
    Basis,
    FSLEProblem,
    Method,
    SolveReport,
    WeakRule,
    _finish,
    embedding_kernel,
    ezzati_kernel,
    friedman_kernel,
    triangular_kernel,
    triangular_spreads,
)


@dataclass(frozen=True)
class CostModel:
    """Multiplications needed to invert one n x n matrix."""

    name: str
    h: Callable[[int], int]

    def __call__(self, n: int) -> int:
        return self.h(n)


COST_MODELS = {
    "cubic": CostModel("cubic", lambda n: n**3),
    # n^3/3 + n^2, floored so the counts stay integral
    "third": CostModel("third", lambda n: n**3 // 3 + n**2),
}


@dataclass(frozen=True)
class OpCounts:
    n: int
    F: int
    E: int
    D_general: int
    D_rejected: int
    D_triangular: int
    D_triangular_rejected: int

    def differences(self) -> dict[str, int]:
        return {
            "F-E": self.F - self.E,
            "E-D_general": self.E - self.D_general,
            "E-D_rejected": self.E - self.D_rejected,
            "E-D_triangular": self.E - self.D_triangular,
            "E-D_triangular_rejected": self.E - self.D_triangular_rejected,
        }


def formula_counts(n: int, model: CostModel = COST_MODELS["cubic"]) -> OpCounts:
    """MNMO of each method for an n x n system whose endpoints are lines."""
    if n < 2:
        raise ValueError(f"operation-count formulas need n >= 2, got {n}")
    h = model(n)
    return OpCounts(
        n=n,
        F=2 * h + 8 * n**2,
        E=2 * h + 6 * n**2,
        D_general=2 * h + 4 * n**2,
        D_rejected=h + 2 * n**2,
        D_triangular=2 * h + 3 * n**2 + n,
        D_triangular_rejected=h + n**2,
    )


class Tally:
    """Multiplication counter owned by one solve."""

    __slots__ = ("count",)

    def __init__(self):
        self.count = 0


class Counted:
    """Float wrapper that charges every ``*`` and ``/`` to a :class:`Tally`."""

    __slots__ = ("value", "tally")

    def __init__(self, value: float, tally: Tally):
        self.value = float(value)
        self.tally = tally

    def _wrap(self, value: float) -> Counted:
        return Counted(value, self.tally)

    @staticmethod
    def _raw(other) -> float:
        return other.value if isinstance(other, Counted) else float(other)

    def __add__(self, other):
        return self._wrap(self.value + self._raw(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.value - self._raw(other))

    def __rsub__(self, other):
        return self._wrap(self._raw(other) - self.value)

    def __mul__(self, other):
        self.tally.count += 1
        return self._wrap(self.value * self._raw(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        self.tally.count += 1
        return self._wrap(self.value / self._raw(other))

    def __rtruediv__(self, other):
        self.tally.count += 1
        return self._wrap(self._raw(other) / self.value)

    def __neg__(self):
        return self._wrap(-self.value)

    def __abs__(self):
        return self._wrap(abs(self.value))

    def __float__(self):
        return self.value

    def __lt__(self, other):
        return self.value < self._raw(other)

    def __le__(self, other):
        return self.value <= self._raw(other)

    def __gt__(self, other):
        return self.value > self._raw(other)

    def __ge__(self, other):
        return self.value >= self._raw(other)

    def __repr__(self):
        return f"Counted({self.value!r})"


def _wrap_rows(rows, tally: Tally):
    return [[Counted(x, tally) for x in r] for r in rows]


def counted_solve(
    problem: FSLEProblem,
    method: Method,
    grid: Sequence[float] | None = None,
    tol: float = DEFAULT_TOL,
) -> tuple[SolveReport, int]:
    """Run one method with instrumented arithmetic.

    Only the linear algebra is counted; classification and the residual
    check run afterwards in plain floats and are the same for every method.
    """
    tally = Tally()
    A = _wrap_rows(problem.A, tally)
    w_lo, w_up = problem.rhs_rows()
    if method is Method.EMBEDDING_TRIANGULAR:
        basis = Basis()
        w_lo, w_up = basis.rows([p.lower for p in problem.w]), basis.rows([p.upper for p in problem.w])
        spreads = [Counted(s, tally) for s in triangular_spreads(problem, tol)]
        raw = triangular_kernel(A, _wrap_rows(w_lo, tally), _wrap_rows(w_up, tally), spreads, tol)
    else:
        basis = problem.basis
        kernel = {
            Method.FRIEDMAN: friedman_kernel,
            Method.EZZATI: ezzati_kernel,
            Method.EMBEDDING: embedding_kernel,
        }[method]
        raw = kernel(A, _wrap_rows(w_lo, tally), _wrap_rows(w_up, tally), basis, tol)
    count = tally.count
    rule = {Method.FRIEDMAN: WeakRule.FRIEDMAN, Method.EZZATI: WeakRule.EZZATI}.get(method)
    report = _finish(method, problem, raw, basis, grid, tol, rule)
    return replace(report, multiplications=count), count
