"""Text, CSV and SVG output for solutions."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

from .fuzzy import AffineZ, Endpoint, FuzzyNumber

CSV_HEADER = ("component", "z", "lower", "upper")


def format_number(x: float) -> str:
    """At most 6 significant digits, no trailing zeros, no ``-0``."""
    if abs(x) < 1e-12:
        return "0"
    s = format(x, ".6g")
    return "0" if s in ("-0", "0") else s


def format_affine(f: AffineZ) -> str:
    """``1.375+0.625z``, ``4-z``, ``3z``, ``2``."""
    const, slope = format_number(f.const_term), format_number(f.slope)
    if slope == "0":
        return const
    mag = slope.lstrip("-")
    term = "z" if mag == "1" else f"{mag}z"
    negative = slope.startswith("-")
    if const == "0":
        return f"-{term}" if negative else term
    return f"{const}{'-' if negative else '+'}{term}"


def format_fuzzy(p: FuzzyNumber) -> str | None:
    """Closed form ``(lower, upper)`` for affine numbers, None otherwise."""
    if not p.is_affine:
        return None
    return f"({format_affine(p.lower)}, {format_affine(p.upper)})"


def format_endpoints(endpoints: Sequence[Endpoint]) -> str:
    if all(isinstance(e, AffineZ) for e in endpoints):
        return "(" + ", ".join(format_affine(e) for e in endpoints) + ")"
    return "(" + ", ".join(f"[{format_number(e.start)} .. {format_number(e.end)}]" for e in endpoints) + ")"


def solution_table(solution: Sequence[FuzzyNumber], grid: Sequence[float], rows: int = 5) -> str:
    """Fixed-width table of a few z-levels for sampled solutions."""
    step = max(1, (len(grid) - 1) // (rows - 1))
    levels = list(grid[::step])
    if levels[-1] != grid[-1]:
        levels.append(grid[-1])
    lines = [f"{'component':>9} {'z':>6} {'lower':>12} {'upper':>12}"]
    for i, p in enumerate(solution, start=1):
        for z in levels:
            lines.append(f"{i:>9} {z:>6.3f} {p.lower(z):>12.6g} {p.upper(z):>12.6g}")
    return "\n".join(lines)


def write_csv(path: str | Path, solution: Sequence[FuzzyNumber], grid: Sequence[float]) -> Path:
    """One row per grid point per component; values written at full precision."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for i, p in enumerate(solution, start=1):
            for z, lo, up in zip(grid, p.lower.at(grid), p.upper.at(grid)):
                writer.writerow([i, repr(float(z)), repr(float(lo)), repr(float(up))])
    return path


def membership_polyline(p: FuzzyNumber, grid: Sequence[float]) -> list[tuple[float, float]]:
    """Vertices ``(value, z)`` of the membership graph.

    Left branch from ``(lower(0), 0)`` up to ``(lower(1), 1)``, then the right
    branch from ``(upper(1), 1)`` back down to ``(upper(0), 0)``.
    """
    levels = (0.0, 1.0) if p.is_affine else tuple(grid)
    left = [(float(p.lower(z)), z) for z in levels]
    right = [(float(p.upper(z)), z) for z in reversed(levels)]
    return left + right


_W, _H, _M = 480, 320, 48


def membership_svg(p: FuzzyNumber, grid: Sequence[float], title: str = "") -> str:
    """Static SVG 1.1 drawing of one membership function."""
    pts = membership_polyline(p, grid)
    xs = [x for x, _ in pts]
    lo, hi = min(xs), max(xs)
    pad = 0.1 * (hi - lo) if hi > lo else 1.0
    lo, hi = lo - pad, hi + pad

    def px(x: float) -> float:
        return _M + (x - lo) / (hi - lo) * (_W - 2 * _M)

    def py(z: float) -> float:
        return _H - _M - z * (_H - 2 * _M)

    poly = " ".join(f"{px(x)!r},{py(z)!r}" for x, z in pts)
    core_lo, core_hi = float(p.lower.end), float(p.upper.end)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f"<title>{escape(title)}</title>",
        f"<desc>x-range {lo!r} {hi!r}; core {core_lo!r} {core_hi!r}</desc>",
        f'<rect x="0" y="0" width="{_W}" height="{_H}" fill="white"/>',
        f'<line x1="{_M}" y1="{py(0)}" x2="{_W - _M}" y2="{py(0)}" stroke="black"/>',
        f'<line x1="{_M}" y1="{py(0)}" x2="{_M}" y2="{py(1)}" stroke="black"/>',
    ]
    for z in (0.0, 0.5, 1.0):
        out.append(
            f'<text x="{_M - 6}" y="{py(z) + 4}" font-size="11" text-anchor="end">{z:g}</text>'
        )
    for k in range(5):
        x = lo + k * (hi - lo) / 4
        out.append(
            f'<text x="{px(x)}" y="{py(0) + 16}" font-size="11" text-anchor="middle">{x:.3g}</text>'
        )
    out.append(
        f'<text x="{_W / 2}" y="{_H - 8}" font-size="12" text-anchor="middle">value</text>'
    )
    out.append(
        f'<text x="14" y="{_H / 2}" font-size="12" text-anchor="middle" '
        f'transform="rotate(-90 14 {_H / 2})">z</text>'
    )
    out.append(f'<polyline class="membership" fill="none" stroke="steelblue" stroke-width="2" points="{poly}"/>')
    for x in sorted({core_lo, core_hi}):
        out.append(
            f'<circle class="apex" cx="{px(x)!r}" cy="{py(1.0)!r}" r="3" fill="crimson">'
            f"<title>{x!r}</title></circle>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path: str | Path, p: FuzzyNumber, grid: Sequence[float], title: str = "") -> Path:
    path = Path(path)
    path.write_text(membership_svg(p, grid, title))
    return path
