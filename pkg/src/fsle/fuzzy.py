"""Parametric fuzzy numbers in z-level form.

A fuzzy number is a pair of endpoint functions ``(lower(z), upper(z))`` on
``0 <= z <= 1``. Two carriers are supported for the endpoints:

* :class:`AffineZ` -- exact ``a + b*z``; every triangular number lives here.
* :class:`SampledZ` -- values on an increasing grid, linearly interpolated.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

DEFAULT_TOL = 1e-9
DEFAULT_GRID_POINTS = 101


def default_grid(points: int = DEFAULT_GRID_POINTS) -> tuple[float, ...]:
    """Uniform z-grid on [0, 1] with exact endpoints."""
    if points < 2:
        raise ValueError(f"a z-grid needs at least 2 points, got {points}")
    grid = [i / (points - 1) for i in range(points)]
    return tuple(grid)


def _check_level(z: float) -> None:
    if not 0.0 <= z <= 1.0:
        raise ValueError(f"membership level z={z!r} lies outside [0, 1]")


@dataclass(frozen=True)
class AffineZ:
    """Endpoint function ``const_term + slope * z``."""

    const_term: float
    slope: float = 0.0

    def __call__(self, z: float) -> float:
        _check_level(z)
        return self.const_term + self.slope * z

    def at(self, grid: Sequence[float]) -> np.ndarray:
        return self.const_term + self.slope * np.asarray(grid, dtype=float)

    @property
    def start(self) -> float:
        """Value at z = 0."""
        return self.const_term

    @property
    def end(self) -> float:
        """Value at z = 1."""
        return self.const_term + self.slope


@dataclass(frozen=True)
class SampledZ:
    """Endpoint function tabulated on a grid that runs from 0 to 1."""

    grid: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        grid = tuple(float(g) for g in self.grid)
        values = tuple(float(v) for v in self.values)
        if len(grid) < 2 or len(grid) != len(values):
            raise ValueError("sampled endpoint needs a grid of >= 2 points and one value per point")
        if grid[0] != 0.0 or grid[-1] != 1.0:
            raise ValueError("sampled grid must start at 0 and end at 1")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("sampled grid must be strictly increasing")
        if not all(np.isfinite(values)):
            raise ValueError("sampled values must be finite")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    def __call__(self, z: float) -> float:
        _check_level(z)
        k = bisect.bisect_left(self.grid, z)
        if self.grid[k] == z:
            return self.values[k]
        z0, z1 = self.grid[k - 1], self.grid[k]
        t = (z - z0) / (z1 - z0)
        return self.values[k - 1] + t * (self.values[k] - self.values[k - 1])

    def at(self, grid: Sequence[float]) -> np.ndarray:
        return np.interp(np.asarray(grid, dtype=float), self.grid, self.values)

    @property
    def start(self) -> float:
        return self.values[0]

    @property
    def end(self) -> float:
        return self.values[-1]


Endpoint = Union[AffineZ, SampledZ]


def evaluate(f: Endpoint, z: float) -> float:
    """Value of an endpoint function at level ``z``; raises ValueError off [0, 1]."""
    return f(z)


def sample(f: Endpoint, grid: Sequence[float]) -> SampledZ:
    return SampledZ(tuple(grid), tuple(f.at(grid)))


@dataclass(frozen=True)
class FuzzyNumber:
    """A fuzzy number ``(lower(z), upper(z))``.

    Validity is not enforced on construction: raw solver output is routinely
    invalid and has to be representable so it can be classified. Use
    :func:`validate_fuzzy_number` to check it.
    """

    lower: Endpoint
    upper: Endpoint

    @classmethod
    def affine(cls, lower: tuple[float, float], upper: tuple[float, float]) -> FuzzyNumber:
        return cls(AffineZ(*lower), AffineZ(*upper))

    @classmethod
    def singleton(cls, k: float) -> FuzzyNumber:
        return cls(AffineZ(k, 0.0), AffineZ(k, 0.0))

    @property
    def is_affine(self) -> bool:
        return isinstance(self.lower, AffineZ) and isinstance(self.upper, AffineZ)

    def __add__(self, other: FuzzyNumber) -> FuzzyNumber:
        return fuzzy_add(self, other)

    def __sub__(self, other: FuzzyNumber) -> FuzzyNumber:
        return fuzzy_sub(self, other)

    def __rmul__(self, k: float) -> FuzzyNumber:
        return scalar_mul(k, self)


FuzzyVector = tuple[FuzzyNumber, ...]


@dataclass(frozen=True)
class TriangularFuzzy:
    """Triangular number with core ``center`` and spreads ``left_spread``/``right_spread``.

    Zero spreads are allowed, so one-sided numbers such as ``(2+z, 3)`` and
    crisp singletons are representable.
    """

    center: float
    left_spread: float = 0.0
    right_spread: float = 0.0

    def __post_init__(self):
        if self.left_spread < 0 or self.right_spread < 0:
            raise ValueError(
                f"triangular spreads must be >= 0, got mu={self.left_spread}, rho={self.right_spread}"
            )

    @property
    def total_spread(self) -> float:
        return self.left_spread + self.right_spread


def triangular_to_parametric(t: TriangularFuzzy) -> FuzzyNumber:
    """``lower = c - (1-z)*mu``, ``upper = c + (1-z)*rho``."""
    c, mu, rho = t.center, t.left_spread, t.right_spread
    return FuzzyNumber(AffineZ(c - mu, mu), AffineZ(c + rho, -rho))


def parametric_to_triangular(p: FuzzyNumber, tol: float = DEFAULT_TOL) -> TriangularFuzzy | None:
    """Recover ``(c, mu, rho)`` from an affine fuzzy number.

    Returns None when the endpoints are not affine, do not meet at z = 1, or
    would need a negative spread.
    """
    if not p.is_affine:
        return None
    lower, upper = p.lower, p.upper
    if abs(lower.end - upper.end) > tol:
        return None
    mu, rho = lower.slope, -upper.slope
    if mu < -tol or rho < -tol:
        return None
    return TriangularFuzzy(lower.end, max(mu, 0.0), max(rho, 0.0))


@dataclass(frozen=True)
class ValidityReport:
    """Outcome of the three fuzzy-number conditions.

    ``lower_increasing`` and ``upper_decreasing`` are the monotonicity
    conditions, ``ordered`` is ``lower(z) <= upper(z)`` for all z.
    """

    lower_increasing: bool
    upper_decreasing: bool
    ordered: bool

    @property
    def valid(self) -> bool:
        return self.lower_increasing and self.upper_decreasing and self.ordered

    def __bool__(self) -> bool:
        return self.valid


def _check_grid(grid: Sequence[float]) -> tuple[float, ...]:
    grid = tuple(float(z) for z in grid)
    if len(grid) < 2 or grid[0] != 0.0 or grid[-1] != 1.0:
        raise ValueError("validation grid must include z = 0 and z = 1")
    return grid


def _union_grid(*grids: Sequence[float]) -> tuple[float, ...]:
    return tuple(sorted(set().union(*map(set, grids))))


def _monotone(f: Endpoint, sign: int, tol: float) -> bool:
    if isinstance(f, AffineZ):
        return sign * f.slope >= -tol
    steps = np.diff(f.values)
    return bool(np.all(sign * steps >= -tol))


def validate_fuzzy_number(
    p: FuzzyNumber, grid: Sequence[float] | None = None, tol: float = DEFAULT_TOL
) -> ValidityReport:
    """Check the monotonicity and ordering conditions of a fuzzy number.

    Affine endpoints are checked algebraically (slope signs, and ordering at
    z = 0 and z = 1, which suffices for a difference of affine functions).
    Sampled endpoints are checked at every sample point, plus ``grid``.
    Left-continuity is not checked: both carriers are continuous.
    """
    grid = _check_grid(grid if grid is not None else default_grid())
    if p.is_affine:
        points: Sequence[float] = (0.0, 1.0)
    else:
        own = [f.grid for f in (p.lower, p.upper) if isinstance(f, SampledZ)]
        points = _union_grid(grid, *own)
    gap = p.upper.at(points) - p.lower.at(points)
    return ValidityReport(
        lower_increasing=_monotone(p.lower, +1, tol),
        upper_decreasing=_monotone(p.upper, -1, tol),
        ordered=bool(np.all(gap >= -tol)),
    )


def _combine(f: Endpoint, g: Endpoint, op) -> Endpoint:
    if isinstance(f, AffineZ) and isinstance(g, AffineZ):
        return AffineZ(op(f.const_term, g.const_term), op(f.slope, g.slope))
    own = [h.grid for h in (f, g) if isinstance(h, SampledZ)]
    grid = _union_grid(*own)
    return SampledZ(grid, tuple(op(f.at(grid), g.at(grid))))


def _scale(k: float, f: Endpoint) -> Endpoint:
    if isinstance(f, AffineZ):
        return AffineZ(k * f.const_term, k * f.slope)
    return SampledZ(f.grid, tuple(k * v for v in f.values))


def fuzzy_add(p: FuzzyNumber, q: FuzzyNumber) -> FuzzyNumber:
    return FuzzyNumber(
        _combine(p.lower, q.lower, lambda a, b: a + b),
        _combine(p.upper, q.upper, lambda a, b: a + b),
    )


def fuzzy_sub(p: FuzzyNumber, q: FuzzyNumber) -> FuzzyNumber:
    """``(p.lower - q.upper, p.upper - q.lower)``; ``p - p`` is not zero."""
    return FuzzyNumber(
        _combine(p.lower, q.upper, lambda a, b: a - b),
        _combine(p.upper, q.lower, lambda a, b: a - b),
    )


def scalar_mul(k: float, p: FuzzyNumber) -> FuzzyNumber:
    """Scale both endpoints; a negative factor swaps them."""
    if k >= 0:
        return FuzzyNumber(_scale(k, p.lower), _scale(k, p.upper))
    return FuzzyNumber(_scale(k, p.upper), _scale(k, p.lower))


def fuzzy_matvec(A: Sequence[Sequence[float]], v: Sequence[FuzzyNumber]) -> FuzzyVector:
    """Row sums ``sum_j a_ij * v_j`` in fuzzy arithmetic."""
    out = []
    for row in A:
        if len(row) != len(v):
            raise ValueError(f"matrix row of length {len(row)} against vector of length {len(v)}")
        acc = FuzzyNumber.singleton(0.0)
        for a, vj in zip(row, v):
            acc = fuzzy_add(acc, scalar_mul(float(a), vj))
        out.append(acc)
    return tuple(out)


def fuzzy_residual(
    A: Sequence[Sequence[float]],
    v: Sequence[FuzzyNumber],
    w: Sequence[FuzzyNumber],
    grid: Sequence[float] | None = None,
) -> float:
    """Largest endpoint mismatch between ``A v`` (fuzzy arithmetic) and ``w`` over ``grid``."""
    if len(A) != len(w) or len(v) != len(w):
        raise ValueError(f"dimension mismatch: A has {len(A)} rows, v has {len(v)}, w has {len(w)}")
    grid = _check_grid(grid if grid is not None else default_grid())
    worst = 0.0
    for lhs, rhs in zip(fuzzy_matvec(A, v), w):
        worst = max(
            worst,
            float(np.max(np.abs(lhs.lower.at(grid) - rhs.lower.at(grid)))),
            float(np.max(np.abs(lhs.upper.at(grid) - rhs.upper.at(grid)))),
        )
    return worst
