"""Command-line front end.

Exit codes: 0 strong solution, 2 weak solution, 3 no fuzzy solution (rejected
early or not fuzzy), 4 singular matrix, 1 bad input or usage.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .fuzzy import default_grid
from .opcount import COST_MODELS, counted_solve, formula_counts
from .problemfile import ProblemFileError, load_problem
from .render import format_endpoints, format_fuzzy, solution_table, write_csv, write_svg
from .solvers import (
    Method,
    SolveReport,
    Status,
    WeakRule,
    embedding_solve,
    ezzati_solve,
    friedman_solve,
    solve_auto,
)

EXIT_CODES = {
    Status.STRONG: 0,
    Status.WEAK: 2,
    Status.NOT_FUZZY: 3,
    Status.REJECTED_EARLY: 3,
    Status.SINGULAR: 4,
}
EXIT_INPUT = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass(frozen=True)
class RunConfig:
    method: str = "auto"
    tolerance: float = 1e-9
    grid_points: int = 101
    weak_rule: str | None = None
    output_dir: Path | None = None

    def __post_init__(self):
        if not self.tolerance > 0:
            raise UsageError(f"--tolerance must be > 0, got {self.tolerance}")
        if self.grid_points < 2:
            raise UsageError(f"--grid must be >= 2, got {self.grid_points}")

    @property
    def grid(self) -> tuple[float, ...]:
        return default_grid(self.grid_points)


def run_method(problem, cfg: RunConfig) -> SolveReport:
    rule = WeakRule(cfg.weak_rule) if cfg.weak_rule else None
    if cfg.method == "friedman":
        return friedman_solve(problem, cfg.grid, cfg.tolerance, rule or WeakRule.FRIEDMAN)
    if cfg.method == "ezzati":
        return ezzati_solve(problem, cfg.grid, cfg.tolerance, rule or WeakRule.EZZATI)
    if cfg.method == "embedding":
        return embedding_solve(problem, cfg.grid, cfg.tolerance)
    return solve_auto(problem, cfg.grid, cfg.tolerance)


def render_report(report: SolveReport, grid: Sequence[float]) -> str:
    lines = [f"method: {report.method.value}", f"status: {report.status.value}"]
    if report.spread_coefficients is not None:
        lines.append("d' = (" + ", ".join(f"{x:.6g}" for x in report.spread_coefficients) + ")")
    elif report.d is not None:
        lines.append(f"d = {format_endpoints(report.d)}")
    if report.g is not None:
        lines.append(f"g = {format_endpoints(report.g)}")
    if report.solution is not None:
        closed = [format_fuzzy(p) for p in report.solution]
        if all(c is not None for c in closed):
            lines += [f"v{i} = {c}" for i, c in enumerate(closed, start=1)]
        else:
            lines.append(solution_table(report.solution, grid))
    if report.residual is not None:
        lines.append(f"residual: {report.residual:.3g}")
    if report.status is Status.SINGULAR:
        lines.append(f"error: singular matrix ({report.message})")
    elif report.message:
        lines.append(report.message)
    return "\n".join(lines)


def cmd_solve(path: str, cfg: RunConfig, out=sys.stdout) -> int:
    problem = load_problem(path).to_problem()
    report = run_method(problem, cfg)
    print(render_report(report, cfg.grid), file=out)
    if cfg.output_dir is not None and report.solution is not None:
        cfg.output_dir.mkdir(parents=True, exist_ok=True)
        csv_path = write_csv(cfg.output_dir / "solution.csv", report.solution, cfg.grid)
        print(f"wrote {csv_path}", file=out)
    return EXIT_CODES[report.status]


def _max_deviation(a: SolveReport, b: SolveReport, grid) -> float:
    worst = 0.0
    for ends_a, ends_b in zip(a.raw, b.raw):
        for fa, fb in zip(ends_a, ends_b):
            worst = max(worst, float(np.max(np.abs(fa.at(grid) - fb.at(grid)))))
    return worst


def cmd_compare(path: str, cfg: RunConfig, out=sys.stdout) -> int:
    problem = load_problem(path).to_problem()
    methods = [Method.FRIEDMAN, Method.EZZATI, Method.EMBEDDING]
    if problem.triangular(cfg.tolerance) is not None:
        methods.append(Method.EMBEDDING_TRIANGULAR)
    reports = [counted_solve(problem, m, cfg.grid, cfg.tolerance)[0] for m in methods]

    print(f"{'method':<20} {'status':<14} {'measured mults':>14}", file=out)
    for r in reports:
        print(f"{r.method.value:<20} {r.status.value:<14} {r.multiplications:>14}", file=out)
    solved = [r for r in reports if r.raw is not None]
    if len(solved) >= 2:
        dev = max(_max_deviation(a, b, cfg.grid) for a, b in itertools.combinations(solved, 2))
        print(f"max raw deviation: {dev:.3g}", file=out)
    else:
        print("max raw deviation: n/a (fewer than two raw solutions)", file=out)
    if problem.n >= 2:
        counts = formula_counts(problem.n)
        print(f"formula MNMO (h = n^3, n = {problem.n}):", file=out)
        print(
            f"  F={counts.F} E={counts.E} D_general={counts.D_general} D_rejected={counts.D_rejected} "
            f"D_triangular={counts.D_triangular} D_triangular_rejected={counts.D_triangular_rejected}",
            file=out,
        )
    return 0


def _parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--n expects comma-separated integers, got {text!r}") from None
    if not sizes:
        raise UsageError("--n needs at least one size")
    if any(n < 2 for n in sizes):
        raise UsageError("--n sizes must all be >= 2")
    return sizes


def cmd_opcount(sizes: Sequence[int], model_name: str, out=sys.stdout) -> int:
    model = COST_MODELS[model_name]
    cols = ["n", "h", "F", "E", "D_gen", "D_rej", "D_tri", "D_tri_rej",
            "F-E", "E-D_gen", "E-D_rej", "E-D_tri", "E-D_tri_rej"]
    print(" ".join(f"{c:>11}" for c in cols), file=out)
    for n in sizes:
        c = formula_counts(n, model)
        values = [n, model(n), c.F, c.E, c.D_general, c.D_rejected, c.D_triangular,
                  c.D_triangular_rejected, *c.differences().values()]
        print(" ".join(f"{v:>11}" for v in values), file=out)
    return 0


def cmd_plot(path: str, cfg: RunConfig, out=sys.stdout) -> int:
    if cfg.output_dir is None:
        raise UsageError("plot needs --out DIR")
    problem = load_problem(path).to_problem()
    report = run_method(problem, cfg)
    if report.solution is None:
        print(render_report(report, cfg.grid), file=out)
        return EXIT_CODES[report.status]
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    for i, p in enumerate(report.solution, start=1):
        svg = write_svg(cfg.output_dir / f"v{i}.svg", p, cfg.grid, title=f"v{i} ({report.status.value})")
        print(f"wrote {svg}", file=out)
    csv_path = write_csv(cfg.output_dir / "solution.csv", report.solution, cfg.grid)
    print(f"wrote {csv_path}", file=out)
    return EXIT_CODES[report.status]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fsle", description="Solve fuzzy systems of linear equations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def run_options(p, method_default="auto"):
        p.add_argument("file")
        p.add_argument("--method", choices=["friedman", "ezzati", "embedding", "auto"], default=method_default)
        p.add_argument("--tolerance", type=float, default=1e-9)
        p.add_argument("--grid", type=int, default=101, help="number of z-levels (default 101)")
        p.add_argument("--weak-rule", choices=["friedman", "ezzati"], default=None)
        p.add_argument("--out", type=Path, default=None)

    run_options(sub.add_parser("solve", help="solve one problem file"))
    run_options(sub.add_parser("compare", help="run every method and compare costs"))
    run_options(sub.add_parser("plot", help="write membership SVGs for the solution"))
    op = sub.add_parser("opcount", help="tabulate the multiplication-count formulas")
    op.add_argument("--n", required=True)
    op.add_argument("--model", choices=sorted(COST_MODELS), default="cubic")
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.command == "opcount":
            return cmd_opcount(_parse_sizes(args.n), args.model, out)
        cfg = RunConfig(args.method, args.tolerance, args.grid, args.weak_rule, args.out)
        command = {"solve": cmd_solve, "compare": cmd_compare, "plot": cmd_plot}[args.command]
        return command(args.file, cfg, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ProblemFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
