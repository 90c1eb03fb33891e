import csv
import io
import re
import subprocess
import sys

import pytest

from fsle import AffineZ, FuzzyNumber, SampledZ, Status, TriangularFuzzy, default_grid
from fsle.cli import EXIT_CODES, EXIT_INPUT, RunConfig, UsageError, main
from fsle.problemfile import ProblemFile, ProblemFileError, dump_problem, parse_problem
from fsle.render import format_affine, membership_polyline, membership_svg

from conftest import DATA


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def apexes(svg_text):
    return [float(x) for x in re.findall(r'class="apex"[^>]*><title>([^<]+)</title>', svg_text)]


# --- solve -------------------------------------------------------------------


def test_solve_example1():
    code, text = run("solve", str(DATA / "example1.yaml"))
    assert code == 0
    assert "method: EmbeddingTriangular" in text
    assert "status: Strong" in text
    assert "v1 = (1.375+0.625z, 2.875-0.875z)" in text
    assert "v2 = (0.875+0.125z, 1.375-0.375z)" in text


@pytest.mark.parametrize("method", ["friedman", "ezzati", "embedding"])
def test_solve_example1_each_method(method):
    code, text = run("solve", str(DATA / "example1.yaml"), "--method", method)
    assert code == 0
    assert "v1 = (1.375+0.625z, 2.875-0.875z)" in text


def test_solve_example2_rejected():
    code, text = run("solve", str(DATA / "example2.yaml"))
    assert code == 3
    assert "The system does not have fuzzy number vector solution" in text
    assert "status: RejectedEarly" in text


def test_solve_example2_friedman_weak():
    code, text = run("solve", str(DATA / "example2.yaml"), "--method", "friedman")
    assert code == 2
    assert "status: Weak" in text


def test_solve_singular_has_distinct_message():
    code, text = run("solve", str(DATA / "singular.yaml"))
    assert code == 4
    assert "singular" in text
    assert "does not have fuzzy number vector solution" not in text


def test_solve_sampled_prints_table():
    code, text = run("solve", str(DATA / "sampled.yaml"), "--grid", "5")
    assert code == 0
    assert "method: Embedding\n" in text
    assert "component" in text and "0.21875" in text


def test_empty_file_is_input_error(capsys):
    code = main(["solve", str(DATA / "empty.yaml")])
    assert code == EXIT_INPUT
    assert "n:" in capsys.readouterr().err


def test_missing_file_is_input_error(tmp_path, capsys):
    assert main(["solve", str(tmp_path / "nope.yaml")]) == EXIT_INPUT
    assert "cannot read" in capsys.readouterr().err


def test_solve_writes_csv_only_with_out(tmp_path):
    code, _ = run("solve", str(DATA / "example1.yaml"), "--out", str(tmp_path / "o"))
    assert code == 0
    assert (tmp_path / "o" / "solution.csv").exists()


def test_csv_matches_closed_form_exactly(tmp_path):
    run("solve", str(DATA / "example1.yaml"), "--out", str(tmp_path))
    with open(tmp_path / "solution.csv", newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["component", "z", "lower", "upper"]
    closed = {1: (AffineZ(1.375, 0.625), AffineZ(2.875, -0.875)),
              2: (AffineZ(0.875, 0.125), AffineZ(1.375, -0.375))}
    grid = default_grid()
    assert len(rows) == 1 + 2 * len(grid)
    for comp, z, lo, up in rows[1:]:
        lo_f, up_f = closed[int(comp)]
        assert float(lo) == lo_f(float(z))
        assert float(up) == up_f(float(z))


@pytest.mark.parametrize("argv", [
    ["solve", "x.yaml", "--tolerance", "0"],
    ["solve", "x.yaml", "--grid", "1"],
    ["solve", "x.yaml", "--method", "newton"],
    ["opcount", "--n", ""],
    ["opcount", "--n", "1,4"],
    ["opcount", "--n", "a"],
    ["plot", str(DATA / "example1.yaml")],
    [],
])
def test_usage_errors(argv):
    assert main(argv, out=io.StringIO()) == EXIT_INPUT


def test_runconfig_validation():
    with pytest.raises(UsageError):
        RunConfig(tolerance=-1)
    assert len(RunConfig(grid_points=3).grid) == 3


def test_exit_codes_total():
    assert set(EXIT_CODES) == set(Status)
    assert EXIT_INPUT not in EXIT_CODES.values()


# --- parsing -----------------------------------------------------------------


@pytest.mark.parametrize("text, pattern", [
    ("n: 1\nmatrix:\n  - [1]\nrhs:\n  - {kind: triangular, c: 1, mu: -1, rho: 0}\n",
     r"line 5: rhs\[0\]\.mu: spread must be >= 0"),
    ("n: 2\nmatrix:\n  - [1, 0]\nrhs: []\n", r"line 2: matrix: expected 2 rows"),
    ("n: 1\nmatrix: [[1]]\nrhs:\n  - {kind: blob}\n", r"line 4: rhs\[0\]\.kind"),
    ("n: 1\nmatrix: [[x]]\nrhs: []\n", r"matrix\[0\]\[0\]: expected a number"),
    ("n: 1\nmatrix: [[1]]\nrhs:\n  - {kind: affine, lower: [1], upper: [1, 0]}\n",
     r"rhs\[0\]\.lower: expected 2 numbers"),
    ("n: 1\nmatrix: [[1]]\nrhs:\n  - {kind: sampled, grid: [0, 0.7], lower: [0, 1], upper: [2, 1]}\n",
     r"rhs\[0\]\.grid"),
    ("n: 1\nmatrix: [[1]]\n", r"missing 'rhs'"),
    ("[1, 2", r"not valid YAML"),
    ("- 1\n", r"must be a mapping"),
])
def test_parse_diagnostics(text, pattern):
    with pytest.raises(ProblemFileError, match=pattern):
        parse_problem(text)


def test_json_is_accepted():
    pf = parse_problem('{"n": 1, "matrix": [[2]], "rhs": [{"kind": "triangular", "c": 1, "mu": 0.5, "rho": 0}]}')
    assert pf.rhs == (TriangularFuzzy(1.0, 0.5, 0.0),)


def test_round_trip_all_kinds():
    pf = ProblemFile(
        3,
        ((1.0, -2.0, 0.5), (0.0, 3.0, 1e-7), (4.0, 1.0, 2.0)),
        (
            TriangularFuzzy(1.5, 0.25, 3.0),
            FuzzyNumber(AffineZ(0.0, 4.0), AffineZ(6.0, -2.0)),
            FuzzyNumber(SampledZ((0, 0.5, 1), (0, 0.75, 1)), SampledZ((0, 0.5, 1), (2, 1.25, 1))),
        ),
    )
    again = parse_problem(dump_problem(pf))
    assert again == pf
    assert parse_problem(dump_problem(again)) == pf


@pytest.mark.parametrize("name", ["example1", "example2", "example3", "sampled", "singular"])
def test_round_trip_fixtures(name):
    pf = parse_problem((DATA / f"{name}.yaml").read_text())
    assert parse_problem(dump_problem(pf)) == pf


# --- compare and opcount -----------------------------------------------------


def test_compare_example3():
    code, text = run("compare", str(DATA / "example3.yaml"))
    assert code == 0
    rows = {m.group(1): (m.group(2), int(m.group(3)))
            for m in re.finditer(r"^(\w+)\s+(\w+)\s+(\d+)$", text, re.M)}
    assert {s for s, _ in rows.values()} == {"Strong"}
    assert {"Friedman", "Ezzati", "Embedding"} <= set(rows)
    assert rows["Embedding"][1] < rows["Ezzati"][1] < rows["Friedman"][1]
    dev = float(re.search(r"max raw deviation: (\S+)", text).group(1))
    assert dev <= 1e-9
    assert "F=48 E=40 D_general=32" in text


def test_compare_example2():
    code, text = run("compare", str(DATA / "example2.yaml"))
    assert code == 0
    rows = {m.group(1): (m.group(2), int(m.group(3)))
            for m in re.finditer(r"^(\w+)\s+(\w+)\s+(\d+)$", text, re.M)}
    assert rows["Embedding"][0] == "RejectedEarly"
    assert rows["Embedding"][1] < rows["Friedman"][1]


def test_compare_crisp_system(tmp_path):
    f = tmp_path / "crisp.yaml"
    f.write_text("n: 2\nmatrix: [[2, 1], [1, 3]]\nrhs:\n"
                 "  - {kind: triangular, c: 3, mu: 0, rho: 0}\n"
                 "  - {kind: triangular, c: 4, mu: 0, rho: 0}\n")
    code, text = run("compare", str(f))
    assert code == 0
    assert float(re.search(r"max raw deviation: (\S+)", text).group(1)) <= 1e-15


def _opcount_rows(text):
    lines = text.strip().splitlines()
    header = lines[0].split()
    return [dict(zip(header, map(int, line.split()))) for line in lines[1:]]


def test_opcount_n10():
    code, text = run("opcount", "--n", "10")
    assert code == 0
    (row,) = _opcount_rows(text)
    assert (row["F-E"], row["E-D_gen"], row["E-D_tri"]) == (200, 200, 290)


def test_opcount_n2_and_third_model():
    _, text = run("opcount", "--n", "2,3", "--model", "third")
    rows = _opcount_rows(text)
    assert rows[0]["F-E"] == 8 and rows[1]["F-E"] == 18
    assert rows[1]["h"] == 18


# --- plot --------------------------------------------------------------------


def test_plot_example1(tmp_path):
    code, _ = run("plot", str(DATA / "example1.yaml"), "--out", str(tmp_path))
    assert code == 0
    svg = (tmp_path / "v1.svg").read_text()
    assert svg.startswith("<?xml") and 'version="1.1"' in svg
    assert apexes(svg) == [2.0]
    assert (tmp_path / "solution.csv").exists()


def test_plot_example3_component2(tmp_path):
    run("plot", str(DATA / "example3.yaml"), "--out", str(tmp_path))
    assert apexes((tmp_path / "v2.svg").read_text()) == [1.0]


def test_plot_rejected_writes_nothing(tmp_path):
    out = tmp_path / "o"
    code, text = run("plot", str(DATA / "example2.yaml"), "--out", str(out))
    assert code == 3
    assert "does not have fuzzy number vector solution" in text
    assert not out.exists()


def test_polyline_shape_example1():
    p = FuzzyNumber(AffineZ(1.375, 0.625), AffineZ(2.875, -0.875))
    assert membership_polyline(p, default_grid()) == [(1.375, 0.0), (2.0, 1.0), (2.0, 1.0), (2.875, 0.0)]


def test_crisp_spike():
    p = FuzzyNumber.singleton(3.5)
    pts = membership_polyline(p, default_grid())
    assert {x for x, _ in pts} == {3.5}
    assert {z for _, z in pts} == {0.0, 1.0}
    assert apexes(membership_svg(p, default_grid())) == [3.5]


def test_sampled_polyline_uses_grid():
    g = (0, 0.5, 1)
    p = FuzzyNumber(SampledZ(g, (0, 0.75, 1)), SampledZ(g, (2, 1.25, 1)))
    pts = membership_polyline(p, g)
    assert len(pts) == 6 and pts[0] == (0.0, 0) and pts[-1] == (2.0, 0)


@pytest.mark.parametrize("f, text", [
    (AffineZ(1.375, 0.625), "1.375+0.625z"),
    (AffineZ(4, -1), "4-z"),
    (AffineZ(0, 3), "3z"),
    (AffineZ(2, 0), "2"),
    (AffineZ(0, -0.5), "-0.5z"),
    (AffineZ(1 / 3, 1e-13), "0.333333"),
])
def test_format_affine(f, text):
    assert format_affine(f) == text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fsle", "opcount", "--n", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "48" in proc.stdout
