import json
import math
from pathlib import Path

import pytest
from click.testing import CliRunner

from intervalhinf.cli import fmt, format_polynomial, load_problem, main
from intervalhinf.errors import ProblemFileError

REPO = Path(__file__).resolve().parent.parent
PROBLEMS = REPO / "problems"

GOLDEN = math.sqrt((3 + 2 * math.sqrt(3)) / 3)


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestProblemFiles:
    def test_shipped_files_parse(self):
        for name in ("point_plant.yaml", "widened_family.yaml", "unstable_family.yaml"):
            prob = load_problem(str(PROBLEMS / name))
            assert prob.kf.degree > prob.kg.degree

    def test_crossed_bounds_reported_with_field_path(self, tmp_path):
        path = write(tmp_path, "bad.yaml",
                     "numerator:\n  - [1, 1]\ndenominator:\n  - [2, 1]\n  - [1, 1]\n")
        with pytest.raises(ProblemFileError, match=r"denominator\[0\]"):
            load_problem(str(path))

    def test_missing_key(self, tmp_path):
        path = write(tmp_path, "bad.yaml", "denominator:\n  - [1, 1]\n  - [1, 1]\n")
        with pytest.raises(ProblemFileError, match="numerator"):
            load_problem(str(path))

    def test_unknown_option(self, tmp_path):
        path = write(tmp_path, "bad.yaml",
                     "numerator:\n  - [1, 1]\ndenominator:\n  - [1, 1]\n  - [1, 1]\n"
                     "options:\n  wat: 3\n")
        with pytest.raises(ProblemFileError, match="options.wat"):
            load_problem(str(path))

    def test_degree_order(self, tmp_path):
        path = write(tmp_path, "bad.yaml",
                     "numerator:\n  - [1, 1]\n  - [1, 1]\ndenominator:\n  - [1, 1]\n  - [1, 1]\n")
        with pytest.raises(ProblemFileError, match="strictly below"):
            load_problem(str(path))

    def test_nonpositive_leading(self, tmp_path):
        path = write(tmp_path, "bad.yaml",
                     "numerator:\n  - [1, 1]\ndenominator:\n  - [1, 1]\n  - [0, 1]\n")
        with pytest.raises(ProblemFileError, match="leading"):
            load_problem(str(path))

    def test_options_are_applied(self, tmp_path):
        path = write(tmp_path, "ok.yaml",
                     "numerator:\n  - [1, 1]\ndenominator:\n  - [1, 1]\n  - [1, 1]\n"
                     "options:\n  seed: 9\n  oracle_samples: 11\n")
        prob = load_problem(str(path))
        assert prob.options.seed == 9
        assert prob.options.oracle_samples == 11


class TestVertices:
    def test_point_file_lists_identical_vertices(self):
        res = run("vertices", PROBLEMS / "point_plant.yaml")
        assert res.exit_code == 0
        assert res.output.count("1 + s + s^2") == 0  # denominator has no constant term
        assert res.output.count("s + s^2") == 4

    def test_degree_two_box(self, tmp_path):
        path = write(tmp_path, "box.yaml",
                     "numerator:\n  - [1, 1]\ndenominator:\n"
                     "  - [1, 2]\n  - [3, 4]\n  - [5, 6]\n")
        res = run("vertices", path)
        assert res.exit_code == 0
        assert "f11: 1 + 3 s + 6 s^2" in res.output
        assert "f12: 1 + 4 s + 6 s^2" in res.output
        assert "f21: 2 + 3 s + 5 s^2" in res.output
        assert "f22: 2 + 4 s + 5 s^2" in res.output

    def test_machine_format(self, tmp_path):
        path = write(tmp_path, "box.yaml",
                     "numerator:\n  - [1, 1]\ndenominator:\n"
                     "  - [1, 2]\n  - [3, 4]\n  - [5, 6]\n")
        res = run("vertices", path, "--format", "machine")
        doc = json.loads(res.output)
        assert doc["denominator"]["11"] == [1.0, 3.0, 6.0]
        assert doc["numerator"]["22"] == [1.0]

    def test_malformed_bounds_exit_2(self, tmp_path):
        path = write(tmp_path, "bad.yaml",
                     "numerator:\n  - [1, 1]\ndenominator:\n  - [2, 1]\n  - [1, 1]\n")
        res = run("vertices", path)
        assert res.exit_code == 2
        assert "denominator[0]" in res.output


class TestAnalyze:
    def test_worked_example_reports_golden(self):
        res = run("analyze", PROBLEMS / "point_plant.yaml")
        assert res.exit_code == 0
        reported = float(res.output.split("worst-case sensitivity norm: ")[1].split("\n")[0])
        assert reported == pytest.approx(GOLDEN, abs=1e-6)

    def test_unstable_family_exits_3(self):
        res = run("analyze", PROBLEMS / "unstable_family.yaml")
        assert res.exit_code == 3
        assert "UNSTABLE" in res.output
        assert "worst-case" not in res.output

    def test_seed_determinism(self):
        a = run("analyze", PROBLEMS / "point_plant.yaml", "--seed", "42")
        b = run("analyze", PROBLEMS / "point_plant.yaml", "--seed", "42")
        assert a.output == b.output

    def test_output_round_trips(self, tmp_path):
        out = tmp_path / "report.json"
        res = run("analyze", PROBLEMS / "point_plant.yaml", "--output", out)
        assert res.exit_code == 0
        doc = json.loads(out.read_text())
        assert doc["worst_norm"] == pytest.approx(GOLDEN, rel=1e-9)
        assert doc["argmax_tuple"] == "1111"
        # machine stdout equals the written document
        res2 = run("analyze", PROBLEMS / "point_plant.yaml", "--format", "machine")
        assert json.loads(res2.output) == doc

    def test_numerical_failure_exits_4(self, tmp_path):
        # near-instability: the bisection cannot bracket the family norm
        path = write(tmp_path, "resonant.yaml",
                     "numerator:\n  - [1, 1]\ndenominator:\n"
                     "  - [1, 1]\n  - [1.0e-10, 1.0e-10]\n  - [1, 1]\n"
                     "options:\n  oracle_samples: 0\n")
        res = run("analyze", path, "--theta-points", "36")
        assert res.exit_code == 4


class TestNorm:
    def test_direct_rational_function(self):
        res = run("norm", "--num", "0,1,1", "--den", "1,1,1")
        assert res.exit_code == 0
        value = float(res.output.split("exact: ")[1].split()[0])
        assert value == pytest.approx(GOLDEN, abs=1e-6)
        omega = float(res.output.split("omega ")[1].split("\n")[0])
        assert omega == pytest.approx(math.sqrt((1 + math.sqrt(3)) / 2), abs=1e-5)

    def test_identity(self):
        res = run("norm", "--num", "1,1", "--den", "1,1")
        assert "exact: 1 " in res.output

    def test_attained_at_infinity(self):
        res = run("norm", "--num", "1,1", "--den", "2,1")
        assert "attained at infinity" in res.output

    def test_point_file_builds_sensitivity(self):
        res = run("norm", PROBLEMS / "point_plant.yaml")
        assert res.exit_code == 0
        value = float(res.output.split("exact: ")[1].split()[0])
        assert value == pytest.approx(GOLDEN, abs=1e-6)

    def test_interval_file_rejected(self):
        res = run("norm", PROBLEMS / "widened_family.yaml")
        assert res.exit_code == 2

    def test_unstable_loop_exits_3(self):
        res = run("norm", "--num", "1", "--den", "-1,1")
        assert res.exit_code == 3


class TestValueset:
    def test_point_family_single_vertex_rows(self):
        res = run("valueset", PROBLEMS / "point_plant.yaml",
                  "--delta", "0.5", "--theta", "1.0", "--omega", "1.0")
        assert res.exit_code == 0
        lines = res.output.strip().split("\n")
        assert lines[0] == "omega,vertex_index,re,im,provenance"
        assert len(lines) == 2

    def test_sweep_appends_margin_column(self):
        res = run("valueset", PROBLEMS / "point_plant.yaml",
                  "--delta", "0.5", "--theta", "0.7", "--sweep", "10:5")
        lines = res.output.strip().split("\n")
        assert lines[0] == "omega,vertex_index,re,im,provenance,margin"

    def test_theta_zero_rectangle(self):
        res = run("valueset", PROBLEMS / "widened_family.yaml",
                  "--delta", "0.5", "--theta", "0.0", "--omega", "1.3")
        rows = res.output.strip().split("\n")[1:]
        assert 1 <= len(rows) <= 4

    def test_sweep_row_count(self):
        res = run("valueset", PROBLEMS / "point_plant.yaml",
                  "--delta", "0.5", "--theta", "0.7", "--sweep", "10:25")
        rows = res.output.strip().split("\n")[1:]
        assert len(rows) == 25  # point family: one vertex per frequency
        assert all(row.count(",") == 5 for row in rows)

    def test_delta_out_of_range_exits_2(self):
        res = run("valueset", PROBLEMS / "point_plant.yaml",
                  "--delta", "1.5", "--omega", "1.0")
        assert res.exit_code == 2

    def test_needs_omega_or_sweep(self):
        res = run("valueset", PROBLEMS / "point_plant.yaml", "--delta", "0.5")
        assert res.exit_code == 2


class TestOracle:
    def test_vertex_injection_keeps_delta_nonnegative(self):
        res = run("oracle", PROBLEMS / "point_plant.yaml", "--samples", "50")
        assert res.exit_code == 0
        delta = float(res.output.split("delta ")[1].split(")")[0])
        assert delta >= -1e-12

    def test_zero_samples(self):
        res = run("oracle", PROBLEMS / "point_plant.yaml", "--samples", "0")
        assert res.exit_code == 0
        assert "samples: 0" in res.output

    def test_seed_reproducibility(self):
        a = run("oracle", PROBLEMS / "widened_family.yaml", "--samples", "100", "--seed", "5")
        b = run("oracle", PROBLEMS / "widened_family.yaml", "--samples", "100", "--seed", "5")
        assert a.output == b.output


class TestFormatting:
    def test_fmt_digits(self):
        assert fmt(math.pi, 9) == "3.14159265"
        assert fmt(math.inf) == "inf"

    def test_format_polynomial(self):
        assert format_polynomial((1.0, -2.0, 0.0, 3.5)) == "1 - 2 s + 3.5 s^3"
        assert format_polynomial((0.0,)) == "0"
        assert format_polynomial((-1.0, 1.0)) == "-1 + s" or \
            format_polynomial((-1.0, 1.0)) == "-1 + 1 s"
