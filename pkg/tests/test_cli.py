import json

import numpy as np
import pytest

from witnesskit.cli import RESULT_COLUMNS, _parse_alpha_range, main
from witnesskit.states import density_to_json, isotropic


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_alpha_single():
    assert _parse_alpha_range("0.7") == [0.7]


def test_parse_alpha_range_inclusive():
    values = _parse_alpha_range("0.1:0.5:0.1")
    assert len(values) == 5
    assert values[0] == pytest.approx(0.1)
    assert values[-1] == pytest.approx(0.5)


def test_parse_alpha_range_bad_spec():
    with pytest.raises(ValueError):
        _parse_alpha_range("0.1:0.5")
    with pytest.raises(ValueError):
        _parse_alpha_range("0.1:0.5:-0.1")


def test_iso_sweep_rows(capsys):
    code, out, _ = run_cli(capsys, "iso-sweep", "--d", "2", "--alpha", "0.2:0.8:0.3")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "d,alpha,threshold,separable,D"
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 3
    assert rows[0][3] == "true" and float(rows[0][4]) == 0.0
    assert rows[2][3] == "false"
    expected = np.sqrt(3) / 2 * (0.8 - 1 / 3)
    assert float(rows[2][4]) == pytest.approx(expected, abs=1e-10)


def test_gamma_signs_text(capsys):
    code, out, _ = run_cli(capsys, "gamma-signs", "--d", "3")
    assert code == 0
    assert out.strip() == "+ - + + - + - +"


def test_gamma_signs_json(capsys):
    code, out, _ = run_cli(capsys, "gamma-signs", "--d", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload == {"d": 2, "signs": [1, -1, 1]}


def test_witness_check_isotropic(capsys):
    code, out, _ = run_cli(
        capsys, "witness-check", "--d", "2", "--alpha", "0.8", "--n-starts", "8"
    )
    assert code == 0
    header, row = out.strip().splitlines()
    values = dict(zip(header.split(","), row.split(",")))
    assert values["is_witness"] == "true"
    assert values["is_optimal"] == "true"
    assert float(values["ent_expectation"]) == pytest.approx(
        -np.sqrt(3) / 2 * (0.8 - 1 / 3), abs=1e-10
    )


def test_witness_check_bad_guess(capsys):
    code, out, _ = run_cli(
        capsys, "witness-check", "--d", "2", "--alpha", "0.8",
        "--guess-alpha", "0.0", "--n-starts", "8",
    )
    assert code == 0
    header, row = out.strip().splitlines()
    values = dict(zip(header.split(","), row.split(",")))
    assert values["is_witness"] == "false"
    assert float(values["sep_minimum"]) < -1e-3


def test_bnt_csv_row(capsys):
    code, out, _ = run_cli(capsys, "bnt", "--d", "2", "--alpha", "0.9", "--seed", "0")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header == ",".join(RESULT_COLUMNS)
    values = dict(zip(RESULT_COLUMNS, row.split(",")))
    closed = np.sqrt(3) / 2 * (0.9 - 1 / 3)
    assert float(values["D_closed"]) == pytest.approx(closed, abs=1e-10)
    assert float(values["D_numeric"]) == pytest.approx(closed, abs=5e-4)
    assert float(values["discrepancy"]) <= 5e-4
    assert values["converged"] == "true"


def test_bnt_deterministic(capsys):
    _, first, _ = run_cli(capsys, "bnt", "--d", "2", "--alpha", "0.8", "--seed", "0")
    _, second, _ = run_cli(capsys, "bnt", "--d", "2", "--alpha", "0.8", "--seed", "0")
    assert first == second


def test_measure_matches_bnt_columns(capsys):
    code, out, _ = run_cli(capsys, "measure", "--d", "2", "--alpha", "0.7")
    assert code == 0
    assert out.splitlines()[0] == ",".join(RESULT_COLUMNS)


def test_measure_state_file(tmp_path, capsys):
    path = tmp_path / "state.json"
    path.write_text(json.dumps(density_to_json(isotropic(2, 0.8))))
    code, out, _ = run_cli(capsys, "measure", "--state", str(path))
    assert code == 0
    header, row = out.strip().splitlines()
    values = dict(zip(RESULT_COLUMNS, row.split(",")))
    assert values["d"] == "" and values["D_closed"] == ""
    assert float(values["D_numeric"]) == pytest.approx(
        np.sqrt(3) / 2 * (0.8 - 1 / 3), abs=5e-4
    )


def test_chsh_scan(capsys):
    code, out, _ = run_cli(
        capsys, "chsh-scan", "--d", "2", "--alpha", "1.0", "--n-starts", "4"
    )
    assert code == 0
    header, row = out.strip().splitlines()
    values = dict(zip(header.split(","), row.split(",")))
    assert float(values["chsh_max"]) == pytest.approx(2 * np.sqrt(2), abs=1e-3)
    assert values["violates_chsh"] == "true"


def test_chsh_scan_rejects_qutrits(capsys):
    code, _, err = run_cli(capsys, "chsh-scan", "--d", "3", "--alpha", "0.5")
    assert code == 1
    assert "d = 2" in err


def test_exit_code_on_bad_alpha(capsys):
    code, _, err = run_cli(capsys, "iso-sweep", "--d", "2", "--alpha", "1.5")
    assert code == 1
    assert err.startswith("witnesskit:")


def test_missing_alpha(capsys):
    code, _, err = run_cli(capsys, "bnt", "--d", "2")
    assert code == 1
    assert "--alpha" in err


def test_json_output_types(capsys):
    code, out, _ = run_cli(
        capsys, "iso-sweep", "--d", "3", "--alpha", "0.5", "--format", "json"
    )
    assert code == 0
    payload = json.loads(out)
    assert isinstance(payload, list) and len(payload) == 1
    row = payload[0]
    assert row["separable"] is False
    assert row["D"] == pytest.approx(2 * np.sqrt(2) / 3 * 0.25)


def test_output_file(tmp_path, capsys):
    path = tmp_path / "sweep.csv"
    code, out, _ = run_cli(
        capsys, "iso-sweep", "--d", "2", "--alpha", "0.5", "--output", str(path)
    )
    assert code == 0
    assert out == ""
    assert path.read_text().splitlines()[0] == "d,alpha,threshold,separable,D"


def test_seed_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv("WITNESSKIT_SEED", "7")
    _, env_out, _ = run_cli(capsys, "bnt", "--d", "2", "--alpha", "0.8")
    _, flag_out, _ = run_cli(capsys, "bnt", "--d", "2", "--alpha", "0.8", "--seed", "7")
    assert env_out == flag_out
    # explicit flag wins over the environment
    monkeypatch.setenv("WITNESSKIT_SEED", "99")
    _, override, _ = run_cli(capsys, "bnt", "--d", "2", "--alpha", "0.8", "--seed", "7")
    assert override == flag_out


def test_solver_config_file(tmp_path, capsys):
    path = tmp_path / "solver.json"
    path.write_text(json.dumps({"n_starts": 8, "seed": 0}))
    code, out, _ = run_cli(
        capsys, "witness-check", "--d", "2", "--alpha", "0.9",
        "--solver-config", str(path),
    )
    assert code == 0
    header, row = out.strip().splitlines()
    values = dict(zip(header.split(","), row.split(",")))
    assert values["is_witness"] == "true"
