"""命令行测试"""

import io
import json

import pandas as pd
import pytest

from cli import main
from cli.commands import EVAL_COLUMNS, SPECTRUM_COLUMNS, VERSION, WAVE_COLUMNS, parse_grid
from utils.errors import DomainError
from verify import CheckResult

EVAL_ARGS = ["eval", "--mu", "-2", "--eps", "0", "--nu", "2", "--Omega", "3", "--omega", "7", "--x", "0.6"]


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def csv_table(text: str) -> pd.DataFrame:
    return pd.read_csv(io.StringIO(text))


# ==================== eval ====================

def test_eval_agrees_with_oracle(capsys):
    code, out, _ = run(capsys, EVAL_ARGS)
    assert code == 0
    table = csv_table(out)
    assert tuple(table.columns) == EVAL_COLUMNS
    assert len(table) == 1
    row = table.iloc[0]
    assert row["x"] == 0.6
    assert row["abs_diff"] <= 1e-12 * max(1.0, abs(row["series_oracle"]))


def test_eval_degenerate_root(capsys):
    code, _, err = run(capsys, ["eval", "--mu", "-2", "--eps", "0", "--nu", "1", "--Omega", "3",
                                "--omega", "7", "--kind", "second", "--x", "0.6"])
    assert code == 2
    assert "错误" in err


def test_eval_missing_parameter(capsys):
    code, _, err = run(capsys, ["eval", "--mu", "-2", "--x", "0.5"])
    assert code == 2
    assert "--eps" in err


def test_eval_unconverged_inner_sum(capsys):
    # z = 25 时 inner_max=10 的内层项比值大于 1，尾项估计为无穷
    code, out, _ = run(capsys, ["eval", "--mu", "-2", "--eps", "0", "--nu", "2", "--Omega", "3",
                                "--omega", "7", "--x", "5", "--n-max", "2", "--inner-max", "10",
                                "--format", "json"])
    assert code == 3
    assert "Infinity" not in out
    doc = json.loads(out)
    assert doc["rows"][0]["tail_estimate"] is None


def test_eval_json(capsys):
    _, csv_out, _ = run(capsys, EVAL_ARGS)
    code, out, _ = run(capsys, EVAL_ARGS + ["--format", "json", "--seed", "5"])
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"rows", "meta"}
    assert tuple(doc["rows"][0]) == EVAL_COLUMNS
    assert doc["meta"]["seed"] == 5
    assert doc["meta"]["version"] == VERSION
    assert doc["meta"]["config"]["params"]["Omega"] == 3.0
    assert doc["rows"][0]["trf_series"] == csv_table(csv_out).iloc[0]["trf_series"]


def test_eval_is_byte_identical(capsys):
    _, first, _ = run(capsys, EVAL_ARGS + ["--x", "0.2,0.4"])
    _, second, _ = run(capsys, EVAL_ARGS + ["--x", "0.2,0.4"])
    assert first == second
    assert first.endswith("\n") and "\r" not in first
    assert len(csv_table(first)) == 3


def test_eval_polynomial_branch(capsys):
    code, out, _ = run(capsys, ["eval", "--mu", "-2", "--eps", "-1", "--nu", "2", "--Omega", "0",
                                "--omega", "0.8", "--branch", "polynomial", "--ladder", "1,1",
                                "--x", "0.5"])
    assert code == 0
    row = csv_table(out).iloc[0]
    assert row["abs_diff"] <= 1e-10 * max(1.0, abs(row["series_oracle"]))


def test_eval_polynomial_needs_ladder(capsys):
    code, _, _ = run(capsys, ["eval", "--mu", "-2", "--eps", "-1", "--nu", "2", "--Omega", "0",
                              "--omega", "0.8", "--branch", "polynomial", "--x", "0.5"])
    assert code == 2


def test_eval_output_file(capsys, tmp_path):
    target = tmp_path / "eval.csv"
    code, out, _ = run(capsys, EVAL_ARGS + ["--output", str(target)])
    assert code == 0
    assert out == ""
    assert target.read_text(encoding="utf-8").startswith(",".join(EVAL_COLUMNS) + "\n")


def test_parse_grid():
    assert parse_grid(["0.1,0.2", "0.3"], "--x") == [0.1, 0.2, 0.3]
    assert parse_grid(None, "--x") == []
    with pytest.raises(DomainError):
        parse_grid(["0.1,abc"], "--x")


# ==================== 配置文件 ====================

def test_config_file_merged_under_flags(capsys, tmp_path):
    config = tmp_path / "run.env"
    config.write_text("mu=-2\neps=0\nnu=2\nOmega=3\nomega=5\nx=0.6\n", encoding="utf-8")
    code, out, _ = run(capsys, ["eval", "--config", str(config), "--omega", "7", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["meta"]["config"]["params"]["omega"] == 7.0
    assert doc["meta"]["config"]["params"]["Omega"] == 3.0

    _, direct, _ = run(capsys, EVAL_ARGS + ["--format", "json"])
    assert json.loads(direct)["rows"] == doc["rows"]


def test_config_file_unknown_key(capsys, tmp_path):
    config = tmp_path / "run.env"
    config.write_text("bogus=1\n", encoding="utf-8")
    code, _, _ = run(capsys, EVAL_ARGS + ["--config", str(config)])
    assert code == 2


def test_config_file_missing(capsys, tmp_path):
    code, _, err = run(capsys, EVAL_ARGS + ["--config", str(tmp_path / "absent.env")])
    assert code == 2
    assert "配置文件不存在" in err


# ==================== verify ====================

def test_verify_kj_reproducible(capsys):
    code, first, _ = run(capsys, ["verify", "kj", "--seed", "7"])
    assert code == 0
    _, second, _ = run(capsys, ["verify", "kj", "--seed", "7"])
    assert first == second
    table = csv_table(first)
    assert table["passed"].all()


def test_verify_unknown_suite(capsys):
    code, _, _ = run(capsys, ["verify", "nonexistent"])
    assert code == 2


def test_verify_all_reports_raising_suite(capsys, monkeypatch):
    def broken(rng):
        raise DomainError("坏参数", module="series-3trf")

    def healthy(rng):
        return [CheckResult("ok", 0.0, 1e-12, True)]

    monkeypatch.setattr("verify.suites.SUITES", {"broken": broken, "healthy": healthy})
    code, out, _ = run(capsys, ["verify", "all"])
    assert code == 1
    table = csv_table(out)
    assert list(table["passed"]) == [False, True]
    assert "DomainError" in table.iloc[0]["check"]


# ==================== spectrum ====================

def test_spectrum_qdot_ladder(capsys):
    code, out, _ = run(capsys, ["spectrum", "qdot", "--omega", "1", "--omega-c", "0", "--sigma", "1",
                                "--m", "0", "--imax", "2", "--bmax", "2"])
    assert code == 0
    table = csv_table(out)
    assert tuple(table.columns) == SPECTRUM_COLUMNS
    assert len(table) == 9
    for i in range(3):
        energies = table[table["i"] == i].sort_values("beta")["eigenvalue"].tolist()
        assert [b - a for a, b in zip(energies, energies[1:])] == pytest.approx([2.0, 2.0])


def test_spectrum_oscillator(capsys):
    code, out, _ = run(capsys, ["spectrum", "oscillator", "--lm", "0", "--imax", "0", "--bmax", "3"])
    assert code == 0
    assert csv_table(out)["eigenvalue"].tolist() == [1.0, 3.0, 5.0, 7.0]


def test_spectrum_empty_range(capsys):
    code, out, _ = run(capsys, ["spectrum", "oscillator", "--bmax", "-1"])
    assert code == 0
    assert out == ",".join(SPECTRUM_COLUMNS) + "\n"


def test_spectrum_wave_samples(capsys):
    code, out, _ = run(capsys, ["spectrum", "oscillator", "--lm", "0", "--imax", "1", "--bmax", "1",
                                "--r-grid", "0.5,1.0"])
    assert code == 0
    table = csv_table(out)
    assert tuple(table.columns) == WAVE_COLUMNS
    assert len(table) == 8
    assert table["psi"].notna().all()


def test_spectrum_guards(capsys):
    code, _, _ = run(capsys, ["spectrum", "confinement", "--a", "1"])
    assert code == 2
    code, _, _ = run(capsys, ["spectrum", "oscillator", "--r-grid", "0,1"])
    assert code == 2
    code, _, _ = run(capsys, ["spectrum", "qdot"])
    assert code == 2
