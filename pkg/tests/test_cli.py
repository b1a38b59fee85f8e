import csv
import io
import json

import pytest

from qftlab.cli import main, read_config_file
from qftlab.errors import ConfigInvalid


def run(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def test_simulate_stdout_text(capsys):
    code, out, _ = run(capsys, "simulate", "--qubits", "4", "--signal", "5:1")
    assert code == 0
    assert "0101     5 1.000000000" in out


def test_simulate_json_stdout(capsys):
    code, out, _ = run(capsys, "simulate", "--qubits", "4", "--signal", "3:1,5:2,7:4", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["distribution"]["probs"][7] == pytest.approx(16 / 21, abs=1e-9)


def test_simulate_out_dir(tmp_path, capsys):
    code, out, _ = run(
        capsys, "simulate", "--qubits", "3", "--signal", "2:1", "--shots", "50", "--seed", "1",
        "--out-dir", str(tmp_path), "--format", "json,csv,svg,text,png",
    )
    assert code == 0
    for ext in ("json", "csv", "svg", "txt", "png"):
        assert (tmp_path / f"simulate.{ext}").exists()
    rows = list(csv.reader(io.StringIO((tmp_path / "simulate.csv").read_text())))
    assert rows[3] == ["010", "2", "1.000000000", "50"]


def test_config_file_with_override(tmp_path, capsys):
    conf = tmp_path / "exp.conf"
    conf.write_text("# bundle\nqubits = 4\nsignal = 3:1,5:2,7:4\nformat = json\nshots=0\n")
    code, out, _ = run(capsys, "simulate", "--config", str(conf), "--signal", "9:1")
    assert code == 0
    d = json.loads(out)
    assert d["config"]["signal"] == "9:1"
    assert d["distribution"]["probs"][9] == 1.0


def test_config_file_errors(tmp_path):
    conf = tmp_path / "bad.conf"
    conf.write_text("colour = blue\n")
    with pytest.raises(ConfigInvalid):
        read_config_file(conf)


@pytest.mark.parametrize(
    "args",
    [
        ("simulate", "--qubits", "0", "--signal", "1:1"),
        ("simulate", "--qubits", "4", "--signal", "x:y"),
        ("simulate", "--qubits", "4"),
        ("simulate", "--qubits", "4", "--signal", "1", "--format", "svg"),
        ("simulate", "--qubits", "4", "--signal", "1", "--shots", "-3"),
        ("preset", "fig7"),
        ("theorems", "--qubits", "99", "--signal", "1"),
        ("leakage", "--steps", "0"),
        ("nosuchcommand",),
    ],
)
def test_config_errors_exit_2(args, capsys):
    code, _, err = run(capsys, *args)
    assert code == 2
    assert err


def test_internal_error_exit_1(monkeypatch, capsys):
    import qftlab.cli as cli_mod

    def boom(*a, **k):
        raise RuntimeError("kaboom")

    monkeypatch.setattr(cli_mod, "run_experiment", boom)
    code, _, _ = run(capsys, "simulate", "--qubits", "2", "--signal", "1")
    assert code == 1


def test_preset_writes_parts(tmp_path, capsys):
    code, out, _ = run(capsys, "preset", "fig3", "--out-dir", str(tmp_path), "--format", "csv")
    assert code == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == ["fig3-15.csv", "fig3-17.csv", "fig3.csv"]
    assert "0001,1,1.000000000,—" in (tmp_path / "fig3-17.csv").read_text().splitlines()


def test_theorems(capsys):
    code, out, _ = run(capsys, "theorems", "--qubits", "4", "--signal", "3:1,5:2,7:4")
    assert code == 0
    d = json.loads(out)
    assert d["theorem1"]["bound_stated"] == 1.75
    assert d["theorem1"]["satisfied_stated"] is False
    assert d["theorem1"]["satisfied_proof"] is True
    assert len(d["theorem2"]) == 3


def test_leakage_csv(tmp_path, capsys):
    out_csv, png = tmp_path / "leak.csv", tmp_path / "leak.png"
    code, _, _ = run(capsys, "leakage", "--k", "4", "--nu-min", "4", "--nu-max", "5", "--steps", "3",
                     "--points", "16", "--out", str(out_csv), "--plot", str(png))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out_csv.read_text())))
    assert [float(r["nu"]) for r in rows] == [4.0, 4.5, 5.0]
    assert float(rows[0]["magnitude"]) == pytest.approx(4.0)
    assert float(rows[2]["magnitude"]) == pytest.approx(0.0, abs=1e-9)
    for r in rows:
        assert float(r["integral_magnitude"]) <= float(r["bound"]) + 1e-12
    assert png.read_bytes()[:4] == b"\x89PNG"


def test_help(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0
    for sub in ("simulate", "preset", "theorems", "leakage"):
        assert sub in out
