import csv
import hashlib
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from sdwave.asymptotics import TimeLadder, VerificationReport
from sdwave.cli import RunConfig, emit_report, main, parse_args
from sdwave.gridlab import read_field


def run(argv, capsys=None):
    code = main(argv)
    out = capsys.readouterr() if capsys else None
    return code, out


def digest(path):
    return {p.name: hashlib.sha256(p.read_bytes()).hexdigest() for p in sorted(path.iterdir())}


def test_verify_defaults():
    cfg = parse_args(["verify", "--claim", "thm11"])
    assert (cfg.nu, cfg.beta, cfg.profile, cfg.claim) == (1.0, 1.0, "gaussian:1:1", "thm11")
    cc = cfg.claim_config()
    assert cc.profile_kind == "gaussian" and cc.sigma == 1.0 and cc.amplitude == 1.0


def test_norm_ladder():
    cfg = parse_args(["norm", "--multiplier", "D", "--n", "1", "--ladder", "100:1e8:25"])
    v = TimeLadder.parse(cfg.ladder).values
    assert len(v) == 25 and v[0] == 100 and v[-1] == 1e8
    assert np.allclose(v[1:] / v[:-1], 10 ** 0.25, rtol=1e-12)


@pytest.mark.parametrize("argv", [
    ["verify", "--nu", "-1"],
    ["verify", "--beta", "0"],
    ["norm", "--n", "4"],
    ["verify", "--claim", "thm99"],
    ["norm", "--multiplier", "X"],
    ["verify", "--bogus"],
    ["frobnicate"],
    ["norm", "--ladder", "1:10:3"],
    ["evolve", "--points", "1000"],
    ["norm", "--profile", "dipole:1:1"],
    ["norm", "--times", "1,-2"],
])
def test_usage_errors_exit_2(argv, capsys):
    code, out = run(argv, capsys)
    assert code == 2
    assert "error" in out.err


def test_bad_flag_message_names_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        parse_args(["verify", "--nu", "-1"])
    assert exc.value.code == 2
    assert "--nu" in capsys.readouterr().err


def test_config_file_and_override(tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text("# sample\nnu = 0.5\nbeta = 2\nprofile = mexican_hat:1:2  # zero mass\n")
    cfg = parse_args(["verify", "--config", str(conf), "--beta", "3"])
    assert cfg.nu == 0.5 and cfg.beta == 3.0 and cfg.profile == "mexican_hat:1:2"
    (tmp_path / "bad.conf").write_text("colour = blue\n")
    with pytest.raises(SystemExit):
        parse_args(["verify", "--config", str(tmp_path / "bad.conf")])


def test_canonical_round_trip(tmp_path):
    cfg = parse_args(["norm", "--nu", "0.3", "--multiplier", "K1", "--n", "2", "--ladder", "10:1e4:9",
                      "--mode", "brute", "--panel-order", "12"])
    conf = tmp_path / "c.conf"
    conf.write_text(cfg.canonical())
    again = parse_args(["norm", "--config", str(conf)])
    assert again == cfg
    assert again.canonical() == cfg.canonical()


def test_norm_stdout(capsys):
    code, out = run(["norm", "--multiplier", "K0", "--n", "2", "--times", "0,1"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out.out)))
    assert rows[0] == ["t", "value", "abs_error_estimate", "panels_used"]
    assert float(rows[1][1]) == pytest.approx(math.sqrt(math.pi), rel=1e-10)
    assert rows[1][3].isdigit()


def test_norm_inadmissible_weight(capsys):
    code, out = run(["norm", "--multiplier", "W", "--n", "2", "--profile", "unit", "--times", "1"], capsys)
    assert code == 2


def test_symbols_table(tmp_path):
    assert main(["symbols-table", "--times", "1", "--radii", "0:2:3", "--out", str(tmp_path)]) == 0
    text = (tmp_path / "symbols.csv").read_bytes()
    assert b"\r" not in text
    rows = list(csv.reader(io.StringIO(text.decode())))
    assert rows[0] == ["t", "r", "K0", "K1", "G", "omega", "D", "Jbeta"]
    assert len(rows) == 4
    assert float(rows[2][5]) == pytest.approx(math.sin(1.0), rel=1e-15)


def test_evolve(tmp_path):
    argv = ["evolve", "--points", "1024", "--half-width", "32", "--times", "1,2", "--out", str(tmp_path)]
    assert main(argv) == 0
    rows = list(csv.reader(open(tmp_path / "evolve.csv")))
    assert rows[0] == ["t", "l2_norm", "energy", "dissipation", "within_horizon"]
    assert [r[4] for r in rows[1:]] == ["true", "true"]
    f = read_field(tmp_path / "u_001.bin")
    assert f.spec.points_per_dim == 1024 and f.spec.half_width == 32
    assert main(argv[:-2] + ["--wave", "--out", str(tmp_path / "w")]) == 0
    rows = list(csv.reader(open(tmp_path / "w" / "evolve.csv")))
    assert float(rows[1][2]) == pytest.approx(float(rows[2][2]), rel=1e-10)


def test_emit_report_empty(tmp_path):
    written = emit_report([], tmp_path)
    assert written == ["summary.json"]
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["n_claims"] == 0 and summary["claims"] == []


def test_emit_report_io_failure(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code, _ = run(["verify", "--claim", "lem22", "--out", str(blocker / "sub")], capsys)
    assert code == 1


def test_failing_claim_exit_3(tmp_path, capsys):
    # zero-mass data does not follow the t^(1/4) law, so the claim fails
    code, out = run(["verify", "--claim", "thm11", "--profile", "mexican_hat:1:1", "--out", str(tmp_path)], capsys)
    assert code == 3
    assert "thm11: FAIL" in out.out
    assert json.loads((tmp_path / "thm11.json").read_text())["pass"] is False
    # a ladder that misses the fit window is a usage problem
    code, _ = run(["verify", "--claim", "thm11", "--ladder", "2:20:8", "--out", str(tmp_path)], capsys)
    assert code == 2
    rep = VerificationReport("x", False, {}, {}, {}, {"a": False})
    emit_report([rep], tmp_path / "f")
    assert json.loads((tmp_path / "f" / "summary.json").read_text())["all_pass"] is False


def test_thm11_layout_and_determinism(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["verify", "--claim", "thm11", "--out", str(a)]) == 0
    assert "thm11: PASS" in capsys.readouterr().out
    names = {p.name for p in a.iterdir()}
    assert {"D_norm.csv", "thm11.json", "D_norm.plot"} <= names
    assert names - {"D_norm.csv", "thm11.json", "D_norm.plot"} == {"summary.json", "run_config.txt"}
    rep = json.loads((a / "thm11.json").read_text())
    assert rep["pass"] is True and rep["curves"] == ["D_norm.csv"]
    plot = (a / "D_norm.plot").read_text().splitlines()
    assert plot[0] == "# reference: t^(1/4)"
    # a separate process reproduces every file byte for byte
    subprocess.run([sys.executable, "-m", "sdwave", "verify", "--claim", "thm11", "--out", str(b)],
                   check=True, capture_output=True)
    assert digest(a) == digest(b)


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "verify" in capsys.readouterr().out
