from __future__ import annotations

import csv
import json
from pathlib import Path

import pytest

from twoproj_cli import cli, run
from twoproj_cli.verify import CheckResult, suite


def read_rows(path: Path) -> list[dict[str, str]]:
    lines = [line for line in path.read_text().splitlines() if not line.startswith("#")]
    return list(csv.DictReader(lines))


def header(path: Path) -> list[str]:
    return [line for line in path.read_text().splitlines() if line.startswith("#")]


def column_row(path: Path) -> str:
    return next(line for line in path.read_text().splitlines() if not line.startswith("#"))


@pytest.fixture(autouse=True)
def no_env_output(monkeypatch):
    monkeypatch.delenv("TWOPROJ_OUTPUT_DIR", raising=False)


def test_algebra_command(tmp_path):
    assert run(["algebra", "--p", "0,0.5,1", "-w", "QRQ", "-o", str(tmp_path)]) == 0
    rows = read_rows(tmp_path / "algebra.csv")
    assert [r["spin_class"] for r in rows] == ["scalar", "spinor", "vector"]
    assert [float(r["sum_00"]) for r in rows] == [2.0, 1.5, 1.0]
    assert [r["reducible"] for r in rows] == ["false", "false", "true"]
    assert float(rows[1]["word_01"]) == pytest.approx(0.25)


def test_algebra_rejects_out_of_range_p(tmp_path):
    assert run(["algebra", "--p", "1.5", "-o", str(tmp_path)]) == 2
    assert not (tmp_path / "algebra.csv").exists()


def test_toeplitz_command(tmp_path):
    assert run(["toeplitz", "-n", "1", "--cap", "3", "-o", str(tmp_path)]) == 0
    rows = read_rows(tmp_path / "toeplitz.csv")
    assert len(rows) == 16
    diagonal = [float(r["re"]) for r in rows if r["row"] == r["col"]]
    assert diagonal == pytest.approx([1.0, 2.0, 3.0, 4.0], abs=1e-10)


def test_lambda_command(tmp_path):
    assert run(["lambda", "--s", "0:2:1", "--rho", "0:1:1", "-o", str(tmp_path)]) == 0
    rows = read_rows(tmp_path / "lambda.csv")
    assert len(rows) == 6
    assert column_row(tmp_path / "lambda.csv") == "s,rho,lambda,mu"
    assert all(float(r["lambda"]) > 0 for r in rows)
    assert "# command: lambda" in header(tmp_path / "lambda.csv")


def test_mu_command(tmp_path):
    assert run(["mu", "--s", "0:4:2", "--rho", "1", "-o", str(tmp_path)]) == 0
    assert column_row(tmp_path / "mu.csv") == "s,rho,lambda,mu,one_minus_mu"
    rows = read_rows(tmp_path / "mu.csv")
    for r in rows:
        assert float(r["mu"]) + float(r["one_minus_mu"]) == pytest.approx(1.0, abs=1e-12)


def test_rerun_is_byte_identical(tmp_path):
    args = ["lambda", "--s", "0:1:1", "--rho", "0", "--oracle", "montecarlo", "--samples", "100000"]
    assert run([*args, "-o", str(tmp_path / "a")]) == 0
    assert run([*args, "-o", str(tmp_path / "b")]) == 0
    assert (tmp_path / "a" / "lambda.csv").read_bytes() == (tmp_path / "b" / "lambda.csv").read_bytes()


def test_seed_changes_only_the_oracle(tmp_path):
    args = ["lambda", "--s", "1", "--rho", "0.5", "--oracle", "montecarlo", "--samples", "100000"]
    assert run([*args, "--seed", "1", "-o", str(tmp_path / "a")]) == 0
    assert run([*args, "--seed", "2", "-o", str(tmp_path / "b")]) == 0
    (a,), (b,) = read_rows(tmp_path / "a" / "lambda.csv"), read_rows(tmp_path / "b" / "lambda.csv")
    assert a["lambda"] == b["lambda"]
    assert a["oracle"] != b["oracle"]
    assert "# seed: 1" in header(tmp_path / "a" / "lambda.csv")


def test_output_dir_environment_override(tmp_path, monkeypatch):
    monkeypatch.setenv("TWOPROJ_OUTPUT_DIR", str(tmp_path / "env"))
    assert run(["algebra", "-o", str(tmp_path / "flag")]) == 0
    assert (tmp_path / "env" / "algebra.csv").exists()
    assert not (tmp_path / "flag").exists()


def test_asymptotics_command(tmp_path):
    args = ["asymptotics", "--xi", "2,1", "-t", "2,4,8", "--rapidity", "0,0.5", "-o", str(tmp_path)]
    assert run(args) == 0
    rows = read_rows(tmp_path / "asymptotics.csv")
    assert column_row(tmp_path / "asymptotics.csv") == "t,scaled_lambda,leading,ratio"
    deviations = [abs(float(r["ratio"]) - 1.0) for r in rows]
    assert deviations == sorted(deviations, reverse=True)
    boosts = read_rows(tmp_path / "boost.csv")
    assert float(boosts[0]["relative_deviation"]) == 0.0


def test_asymptotics_outside_cone_fails(tmp_path):
    assert run(["asymptotics", "--xi", "1,2", "-o", str(tmp_path)]) == 2


def test_spectrum_command(tmp_path):
    assert run(["spectrum", "--sizes", "4,8", "--nodes", "64", "-o", str(tmp_path)]) == 0
    data = json.loads((tmp_path / "spectrum.json").read_text())
    assert data["provenance"]["command"] == "spectrum"
    assert data["range"]["empty_bins"] == 0
    assert [s["size"] for s in data["sections"]] == [4, 8]
    assert len(read_rows(tmp_path / "spectrum_sections.csv")) == 12
    histogram = read_rows(tmp_path / "spectrum_histogram.csv")
    assert column_row(tmp_path / "spectrum_histogram.csv") == "bin_lo,bin_hi,count"
    assert len(histogram) == 64
    assert [int(r["count"]) for r in histogram] == data["range"]["histogram"]
    assert float(histogram[0]["bin_lo"]) == 0.0
    assert float(histogram[-1]["bin_hi"]) == 1.0


def test_evolve_command(tmp_path):
    config = tmp_path / "run.json"
    config.write_text(
        json.dumps(
            {
                "grid": {"points": 64},
                "packet": {"widths": [1.0, 1.0]},
                "evolve": {"symbol": "approximate", "taus": [0.0, 0.5]},
            }
        )
    )
    assert run(["evolve", "-c", str(config), "-o", str(tmp_path / "out")]) == 0
    summary = json.loads((tmp_path / "out" / "evolve_summary.json").read_text())
    assert [s["file"] for s in summary["snapshots"]] == ["snapshot_000.csv", "snapshot_001.csv"]
    for snap in summary["snapshots"]:
        assert snap["norm"] == pytest.approx(1.0, abs=1e-12)
    assert len(read_rows(tmp_path / "out" / "snapshot_001.csv")) == 64 * 64


def test_evolve_rejects_conflicting_symbols(tmp_path):
    assert run(["evolve", "--direct", "--approximate", "-o", str(tmp_path)]) == 2


def test_bad_config_file(tmp_path):
    config = tmp_path / "run.json"
    config.write_text('{"units": {"mass": 2}}')
    assert run(["lambda", "-c", str(config), "-o", str(tmp_path)]) == 2
    assert run(["lambda", "-c", str(tmp_path / "missing.json"), "-o", str(tmp_path)]) == 2


def test_verify_subset_passes(tmp_path):
    assert run(["verify", "-g", "algebra,toeplitz", "-o", str(tmp_path)]) == 0
    rows = read_rows(tmp_path / "verify.csv")
    assert rows
    assert {r["status"] for r in rows} == {"pass"}


def test_verify_failure_exit_code(tmp_path, monkeypatch):
    monkeypatch.setitem(
        suite.CHECK_GROUPS, "algebra", lambda config: [CheckResult("forced", 1.0, "<=", 0.0)]
    )
    assert run(["verify", "-g", "algebra", "-o", str(tmp_path)]) == 1
    (row,) = read_rows(tmp_path / "verify.csv")
    assert row["check"] == "forced" and row["status"] == "fail"


def test_verify_unknown_group(tmp_path):
    assert run(["verify", "-g", "nonsense", "-o", str(tmp_path)]) == 2


def test_internal_errors_propagate(tmp_path, monkeypatch):
    def broken(*args):
        raise IndexError("internal bug")

    monkeypatch.setattr(cli, "run_with_args", broken)
    with pytest.raises(IndexError, match="internal bug"):
        run(["lambda", "-o", str(tmp_path)])


def test_config_type_error_exit_code(tmp_path):
    config = tmp_path / "run.json"
    config.write_text('{"grid": {"points": "64"}}')
    assert run(["evolve", "-c", str(config), "-o", str(tmp_path)]) == 2


def test_verify_rerun_is_byte_identical(tmp_path):
    args = ["verify", "-g", "algebra,toeplitz,asymptotics,cli"]
    assert run([*args, "-o", str(tmp_path / "a")]) == 0
    assert run([*args, "-o", str(tmp_path / "b")]) == 0
    assert (tmp_path / "a" / "verify.csv").read_bytes() == (tmp_path / "b" / "verify.csv").read_bytes()
