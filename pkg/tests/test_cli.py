import csv
import json

import pytest
from click.testing import CliRunner

from app.cmd.cmd import main
from liegeom.algebra import format_structure_constants, parse_structure_constants


@pytest.fixture
def runner():
    return CliRunner()


def read_report(path):
    return json.loads(path.read_text(encoding="utf-8"))


class TestVerify:
    def test_single_check_passes(self, runner, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(main, ["verify", "--suite", "hl-identity", "--trials", "5", "--out", str(out)])
        assert result.exit_code == 0, result.output
        report = read_report(out)
        assert report["command"] == "verify"
        assert report["passed"] is True
        assert [c["check_id"] for c in report["checks"]] == ["hl-identity"]
        assert report["checks"][0]["trials"] == 5

    def test_tiny_float_tolerance_fails(self, runner, tmp_path):
        out = tmp_path / "report.json"
        result = runner.invoke(main, [
            "verify", "--suite", "hl-identity", "--mode", "float", "--trials", "20",
            "--tolerance", "hl-identity=1e-30", "--out", str(out),
        ])
        assert result.exit_code == 1
        report = read_report(out)
        assert report["passed"] is False
        assert report["summary"]["failed"] == ["hl-identity"]

    def test_same_seed_same_report(self, runner, tmp_path):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for path in paths:
            result = runner.invoke(main, ["verify", "--suite", "exterior", "--trials", "3", "--seed", "5",
                                          "--threads", "2", "--out", str(path)])
            assert result.exit_code == 0
        assert paths[0].read_text() == paths[1].read_text()

    def test_unknown_suite_is_a_usage_error(self, runner):
        result = runner.invoke(main, ["verify", "--suite", "nonsense"])
        assert result.exit_code == 2

    def test_bad_tolerance_is_a_usage_error(self, runner):
        result = runner.invoke(main, ["verify", "--suite", "hl-identity", "--tolerance", "hl-identity=abc"])
        assert result.exit_code == 2

    def test_zero_trials_is_a_usage_error(self, runner):
        result = runner.invoke(main, ["verify", "--trials", "0"])
        assert result.exit_code == 2


class TestLiealg:
    def test_search_produced_algebra(self, runner, tmp_path, worked):
        alg, labels = worked
        path = tmp_path / "example.txt"
        path.write_text(format_structure_constants(alg), encoding="utf-8")
        out = tmp_path / "report.json"
        result = runner.invoke(main, ["liealg", str(path), "--split", labels, "--out", str(out)])
        assert result.exit_code == 0, result.output
        report = read_report(out)
        assert report["summary"]["tau2_norm2"] != "0"
        assert report["summary"]["derived_dim"] == alg.derived_dimension()
        assert {c["check_id"] for c in report["checks"]} == {
            "bryant-identities", "levi-civita", "oneill-identities", "coassociative-fibration",
        }

    def test_abelian_algebra(self, runner, tmp_path):
        path = tmp_path / "abelian.txt"
        path.write_text("# flat torus\ndim 7\n", encoding="utf-8")
        out = tmp_path / "report.json"
        result = runner.invoke(main, ["liealg", str(path), "--out", str(out)])
        assert result.exit_code == 0
        assert read_report(out)["summary"]["tau2_norm2"] == "0"

    def test_parse_error_is_reported(self, runner, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("dim 7\nc 5 1 2 = -1\nc 9 1 2 = 1\n", encoding="utf-8")
        out = tmp_path / "report.json"
        result = runner.invoke(main, ["liealg", str(path), "--out", str(out)])
        assert result.exit_code == 1
        report = read_report(out)
        assert report["passed"] is False
        assert report["error"]["data"] == {"line": 3}

    def test_non_closed_algebra_is_rejected(self, runner, tmp_path):
        path = tmp_path / "heisenberg.txt"
        path.write_text("c 3 1 2 = 1\n", encoding="utf-8")
        out = tmp_path / "report.json"
        result = runner.invoke(main, ["liealg", str(path), "--out", str(out)])
        assert result.exit_code == 1
        assert "d(phi)" in read_report(out)["error"]["message"]

    def test_bad_split_is_a_usage_error(self, runner, tmp_path):
        path = tmp_path / "abelian.txt"
        path.write_text("dim 7\n", encoding="utf-8")
        result = runner.invoke(main, ["liealg", str(path), "--split", "4x"])
        assert result.exit_code == 2


class TestSearch:
    def test_zero_coefficients_find_only_the_torus(self, runner, tmp_path):
        out = tmp_path / "report.json"
        out_dir = tmp_path / "hits"
        result = runner.invoke(main, ["search", "--coefficients", "0", "--out", str(out), "--out-dir", str(out_dir)])
        assert result.exit_code == 0, result.output
        report = read_report(out)
        assert len(report["summary"]["hits"]) == 1
        written = out_dir / "closed_g2_01.txt"
        assert parse_structure_constants(written.read_text(encoding="utf-8")).is_abelian()

    def test_bad_coefficients(self, runner):
        result = runner.invoke(main, ["search", "--coefficients", "1,x"])
        assert result.exit_code == 2


class TestVariations:
    def test_affine_fibre(self, runner, tmp_path):
        out = tmp_path / "report.json"
        curve = tmp_path / "curve.csv"
        result = runner.invoke(main, [
            "variations", "--family", "affine-fiber", "--grid", "8", "--points", "3",
            "--csv", str(curve), "--out", str(out),
        ])
        assert result.exit_code == 0, result.output
        report = read_report(out)
        assert report["summary"]["family"] == "affine-fiber"
        assert len(report["summary"]["curve"]) == 3
        with curve.open(newline="") as stream:
            rows = list(csv.DictReader(stream))
        assert len(rows) == 3
        assert all(abs(float(row["vol"]) - 1.0) < 1e-12 for row in rows)

    def test_unknown_family_is_a_usage_error(self, runner):
        result = runner.invoke(main, ["variations", "--family", "torus"])
        assert result.exit_code == 2

    def test_grid_floor_is_enforced(self, runner):
        result = runner.invoke(main, ["variations", "--family", "graph", "--grid", "4"])
        assert result.exit_code == 2
