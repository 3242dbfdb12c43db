import json
import subprocess
import sys

import pytest

from okubo.algebra import StructureConstantAlgebra
from okubo.cli import main
from okubo.models import build_split_okubo
from okubo.fields import GF


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestSubcommands:
    def test_verify(self, capsys):
        code, report = run_cli(capsys, "verify", "--field", "gf(3)", "--trials", "50")
        assert code == 0 and report["passed"]
        assert report["results"]["commutative_center_dim"] == 0
        assert report["results"]["grading_ok"]

    def test_verify_gf4(self, capsys):
        code, report = run_cli(capsys, "verify", "--field", "gf(2^2;t^2+t+1)", "--trials", "50")
        assert code == 0 and report["passed"]

    def test_verify_qw(self, capsys):
        code, report = run_cli(capsys, "verify", "--field", "q(w)", "--trials", "25")
        assert code == 0 and report["passed"]

    def test_models_char_not3(self, capsys):
        code, report = run_cli(capsys, "models", "--field", "gf(7)")
        assert code == 0 and report["passed"]
        assert "sl3" in report["results"]["models_built"]

    def test_models_char3(self, capsys):
        code, report = run_cli(capsys, "models", "--field", "gf(3)")
        assert code == 0 and report["passed"]
        assert "truncated" in report["results"]["models_built"]

    def test_models_no_omega(self, capsys):
        code, report = run_cli(capsys, "models", "--field", "gf(5)")
        assert code == 0 and report["passed"]
        assert report["results"]["models_built"] == ["table"]
        assert "note" in report["results"]

    def test_derivations_gf3(self, capsys):
        code, report = run_cli(capsys, "derivations", "--field", "gf(3)")
        assert code == 0 and report["passed"]
        assert report["results"]["dim_der"] == 10
        assert report["results"]["grading_dims"]["(0,0)"] == 2

    def test_derivations_gf7(self, capsys):
        code, report = run_cli(capsys, "derivations", "--field", "gf(7)")
        assert code == 0 and report["passed"]
        assert report["results"]["dim_der"] == 8
        assert report["results"]["checks"]["der_equals_inner"]

    def test_derivations_gf2_reported_only(self, capsys):
        code, report = run_cli(capsys, "derivations", "--field", "gf(2)")
        assert code == 0 and report["passed"]
        assert report["results"]["checks"] == {}

    def test_census(self, capsys):
        code, report = run_cli(capsys, "census", "--field", "gf(3)")
        assert code == 0 and report["passed"]
        assert report["results"]["total"] == 81
        assert report["results"]["by_type"]["quaternionic"] == 1

    def test_census_wrong_characteristic(self, capsys):
        code, report = run_cli(capsys, "census", "--field", "gf(5)")
        assert code == 2
        assert "BadCharacteristic" in report["error"]

    def test_twist(self, capsys):
        code, report = run_cli(
            capsys, "twist", "--field", "gf(3)",
            "--idempotent", "1,1,1,1,1,1,1,1", "--trials", "100",
        )
        assert code == 0 and report["passed"]

    def test_twist_rejects_non_idempotent(self, capsys):
        code, report = run_cli(
            capsys, "twist", "--field", "gf(3)", "--idempotent", "1,0,0,0,0,0,0,0"
        )
        assert code == 2
        assert "NotIdempotent" in report["error"]

    def test_bad_field_spec(self, capsys):
        code, report = run_cli(capsys, "verify", "--field", "gf(6)")
        assert code == 2
        assert "error" in report


class TestExportAndReports:
    def test_export_round_trip(self, capsys, tmp_path):
        out = tmp_path / "okubo.json"
        code, report = run_cli(capsys, "export", "--field", "gf(3)", str(out))
        assert code == 0
        data = out.read_text()
        back = StructureConstantAlgebra.from_json(data)
        assert back.same_tensor_as(build_split_okubo(GF(3)))

    def test_json_flag_writes_report(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, report = run_cli(
            capsys, "verify", "--field", "gf(3)", "--trials", "20", "--json", str(path)
        )
        assert code == 0
        on_disk = json.loads(path.read_text())
        assert on_disk["results"] == report["results"]

    def test_results_reproducible_for_fixed_seed(self, capsys):
        _, a = run_cli(capsys, "verify", "--field", "gf(3)", "--seed", "5", "--trials", "30")
        _, b = run_cli(capsys, "verify", "--field", "gf(3)", "--seed", "5", "--trials", "30")
        assert json.dumps(a["results"], sort_keys=True) == json.dumps(b["results"], sort_keys=True)
        _, c = run_cli(capsys, "census", "--field", "gf(3)", "--seed", "5")
        _, d = run_cli(capsys, "census", "--field", "gf(3)", "--seed", "5")
        assert json.dumps(c["results"], sort_keys=True) == json.dumps(d["results"], sort_keys=True)

    def test_report_metadata(self, capsys):
        _, report = run_cli(capsys, "verify", "--field", "gf(3)", "--seed", "3", "--trials", "20")
        assert report["command"] == "verify"
        assert report["field"] == "gf(3)"
        assert report["seed"] == 3
        assert "timestamp" in report
        assert report["backend"] in ("numba", "numpy")


@pytest.mark.slow
def test_census_full_field_gf7(capsys):
    code, report = run_cli(
        capsys, "census", "--field", "gf(3)", "--full-field", "gf(7)"
    )
    assert code == 0 and report["passed"]
    extra = report["results"]["full_field"]
    assert extra["total"] == 2793
    assert extra["all_norms_one"]
    assert extra["minpoly_at_most_2"]
    assert extra["minpoly_degrees"] == [2]


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "okubo.cli", "verify", "--field", "gf(3)", "--trials", "10"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0, out.stderr
    report = json.loads(out.stdout)
    assert report["passed"]
