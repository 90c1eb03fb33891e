"""Reading and writing problem files.

A problem file is YAML (JSON is accepted too)::

    n: 2
    matrix:
      - [1, -1]
      - [1, 3]
    rhs:
      - {kind: triangular, c: 1, mu: 1, rho: 1}
      - {kind: affine, lower: [4, 1], upper: [7, -2]}

``affine`` entries give ``[const, slope]`` for each endpoint; ``sampled``
entries give ``grid``, ``lower`` and ``upper`` lists of equal length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import yaml

from .fuzzy import AffineZ, FuzzyNumber, SampledZ, TriangularFuzzy, triangular_to_parametric
from .solvers import FSLEProblem

RhsEntry = Union[TriangularFuzzy, FuzzyNumber]


class ProblemFileError(ValueError):
    """Malformed problem file; the message names the line and field."""


class _Mapping(dict):
    lines: dict


class _LineLoader(yaml.SafeLoader):
    def construct_mapping(self, node, deep=False):
        mapping = _Mapping(super().construct_mapping(node, deep=deep))
        mapping.lines = {k.value: k.start_mark.line + 1 for k, _ in node.value}
        mapping.lines[None] = node.start_mark.line + 1
        return mapping


def _construct_map(loader, node):
    return loader.construct_mapping(node, deep=True)


_LineLoader.add_constructor("tag:yaml.org,2002:map", _construct_map)


@dataclass(frozen=True)
class ProblemFile:
    n: int
    matrix: tuple[tuple[float, ...], ...]
    rhs: tuple[RhsEntry, ...]

    def to_problem(self) -> FSLEProblem:
        w = [triangular_to_parametric(e) if isinstance(e, TriangularFuzzy) else e for e in self.rhs]
        return FSLEProblem(self.matrix, tuple(w))


def _where(mapping, key) -> str:
    lines = getattr(mapping, "lines", {})
    line = lines.get(key, lines.get(None))
    return f"line {line}: " if line else ""


def _number(value, field: str, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ProblemFileError(f"{where}{field}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ProblemFileError(f"{where}{field}: must be finite")
    return float(value)


def _numbers(value, field: str, where: str, length: int | None = None) -> tuple[float, ...]:
    if not isinstance(value, list):
        raise ProblemFileError(f"{where}{field}: expected a list of numbers")
    if length is not None and len(value) != length:
        raise ProblemFileError(f"{where}{field}: expected {length} numbers, got {len(value)}")
    return tuple(_number(x, f"{field}[{i}]", where) for i, x in enumerate(value))


def _require(mapping, key: str, field: str):
    if key not in mapping:
        raise ProblemFileError(f"{_where(mapping, None)}{field}: missing '{key}'")
    return mapping[key]


def _parse_entry(rec, i: int) -> RhsEntry:
    field = f"rhs[{i}]"
    if not isinstance(rec, dict):
        raise ProblemFileError(f"{field}: expected a mapping with a 'kind' key")
    kind = _require(rec, "kind", field)
    if kind == "triangular":
        c, mu, rho = (
            _number(_require(rec, k, field), f"{field}.{k}", _where(rec, k)) for k in ("c", "mu", "rho")
        )
        for name, value in (("mu", mu), ("rho", rho)):
            if value < 0:
                raise ProblemFileError(f"{_where(rec, name)}{field}.{name}: spread must be >= 0")
        return TriangularFuzzy(c, mu, rho)
    if kind == "affine":
        lower = _numbers(_require(rec, "lower", field), f"{field}.lower", _where(rec, "lower"), 2)
        upper = _numbers(_require(rec, "upper", field), f"{field}.upper", _where(rec, "upper"), 2)
        return FuzzyNumber(AffineZ(*lower), AffineZ(*upper))
    if kind == "sampled":
        grid = _numbers(_require(rec, "grid", field), f"{field}.grid", _where(rec, "grid"))
        lower = _numbers(_require(rec, "lower", field), f"{field}.lower", _where(rec, "lower"), len(grid))
        upper = _numbers(_require(rec, "upper", field), f"{field}.upper", _where(rec, "upper"), len(grid))
        try:
            return FuzzyNumber(SampledZ(grid, lower), SampledZ(grid, upper))
        except ValueError as exc:
            raise ProblemFileError(f"{_where(rec, 'grid')}{field}.grid: {exc}") from None
    raise ProblemFileError(
        f"{_where(rec, 'kind')}{field}.kind: expected triangular, affine or sampled, got {kind!r}"
    )


def parse_problem(text: str) -> ProblemFile:
    try:
        doc = yaml.load(text, Loader=_LineLoader)
    except yaml.YAMLError as exc:
        raise ProblemFileError(f"not valid YAML: {exc}") from None
    if not isinstance(doc, dict):
        raise ProblemFileError("problem file must be a mapping with keys n, matrix, rhs")
    n = _require(doc, "n", "n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ProblemFileError(f"{_where(doc, 'n')}n: expected a positive integer, got {n!r}")
    matrix = _require(doc, "matrix", "matrix")
    if not isinstance(matrix, list) or len(matrix) != n:
        raise ProblemFileError(f"{_where(doc, 'matrix')}matrix: expected {n} rows")
    rows = tuple(_numbers(r, f"matrix[{i}]", _where(doc, "matrix"), n) for i, r in enumerate(matrix))
    rhs = _require(doc, "rhs", "rhs")
    if not isinstance(rhs, list) or len(rhs) != n:
        raise ProblemFileError(f"{_where(doc, 'rhs')}rhs: expected {n} entries")
    entries = tuple(_parse_entry(rec, i) for i, rec in enumerate(rhs))
    grids = {
        f.grid for e in entries if isinstance(e, FuzzyNumber) for f in (e.lower, e.upper)
        if isinstance(f, SampledZ)
    }
    if len(grids) > 1:
        raise ProblemFileError(f"{_where(doc, 'rhs')}rhs: sampled entries must share one grid")
    return ProblemFile(n, rows, entries)


def load_problem(path: str | Path) -> ProblemFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ProblemFileError(f"cannot read {path}: {exc.strerror}") from None
    return parse_problem(text)


def _entry_record(e: RhsEntry) -> dict:
    if isinstance(e, TriangularFuzzy):
        return {"kind": "triangular", "c": e.center, "mu": e.left_spread, "rho": e.right_spread}
    if e.is_affine:
        return {
            "kind": "affine",
            "lower": [e.lower.const_term, e.lower.slope],
            "upper": [e.upper.const_term, e.upper.slope],
        }
    return {
        "kind": "sampled",
        "grid": list(e.lower.grid),
        "lower": list(e.lower.values),
        "upper": list(e.upper.values),
    }


def dump_problem(pf: ProblemFile) -> str:
    doc = {
        "n": pf.n,
        "matrix": [list(r) for r in pf.matrix],
        "rhs": [_entry_record(e) for e in pf.rhs],
    }
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None)
