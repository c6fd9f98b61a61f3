import csv
import io
import json
import subprocess
import sys

import pytest

from quidsim.cli import main, parse_complex

GOLDEN_1_ARGS = ["--alpha", "-0.57659+0.24170i", "--beta", "-0.59478-0.50532i"]


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize(
    "text, value",
    [
        ("-0.57659+0.24170i", -0.57659 + 0.24170j),
        ("0.36011 + 0.06845i", 0.36011 + 0.06845j),
        ("1", 1 + 0j),
        ("-i", -1j),
        ("0.8j", 0.8j),
        ("1e-3-2E-1i", 1e-3 - 0.2j),
    ],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


def test_teleport_statevector_forced(capsys):
    code, out, _ = run(["teleport-statevector", *GOLDEN_1_ARGS, "--forced-branch", "1,0"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["branch"] == [1, 0] and doc["corrections"] == ["Z"]
    sv = [complex(*p) for p in doc["statevector"]]
    assert [i for i, z in enumerate(sv) if abs(z) > 1e-12] == [1, 5]
    assert sv[1] == pytest.approx(-0.57659 + 0.24171j, abs=1e-4)
    assert sv[5] == pytest.approx(-0.59478 - 0.50532j, abs=1e-4)
    assert set(doc) >= {"prepared", "branch", "corrections", "statevector", "bob"}


def test_teleport_statevector_ground(capsys):
    code, out, _ = run(["teleport-statevector", "--alpha", "1", "--beta", "0", "--seed", "3"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["bob"] == [[1.0, 0.0], [0.0, 0.0]] and doc["seed"] == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["teleport-statevector", "--alpha", "1+", "--beta", "0"],
        ["teleport-statevector", "--alpha", "0.8", "--beta", "0.7"],
        ["teleport-counts", "--prep-bit", "0", "--shots", "0"],
        ["teleport-counts", "--prep-bit", "2"],
        ["teleport-counts"],
        ["bloch", "--alpha", "1", "--beta", "1"],
        ["teleport-counts", "--prep-bit", "0", "--readout-flip-p", "1.5"],
        ["nonsense"],
    ],
)
def test_validation_errors_exit_2(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2
    assert out == "" and err


def test_teleport_counts_json(capsys):
    code, out, _ = run(["teleport-counts", "--prep-bit", "0", "--shots", "1024", "--seed", "12"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["bob_error_rate"] == 0.0 and doc["shots"] == 1024 and doc["seed"] == 12
    assert sum(doc["counts"].values()) == 1024
    assert all(len(k) == 3 and k[0] == "0" for k in doc["counts"])


def test_teleport_counts_readout(capsys):
    code, out, _ = run(
        ["teleport-counts", "--prep-bit", "1", "--seed", "5", "--readout-flip-p", "0.056"], capsys
    )
    rate = json.loads(out)["bob_error_rate"]
    assert abs(rate - 0.056) <= 3 * (0.056 * 0.944 / 1024) ** 0.5


def test_teleport_counts_csv(capsys):
    code, out, _ = run(["teleport-counts", "--prep-bit", "1", "--seed", "5", "--format", "csv"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["bitstring", "count"]
    keys = [r[0] for r in rows[1:]]
    assert keys == sorted(keys) and sum(int(r[1]) for r in rows[1:]) == 1024
    assert "\r\n" in out


def test_bloch(capsys):
    code, out, _ = run(["bloch", "--alpha", "1", "--beta", "0"], capsys)
    assert json.loads(out)["z"] == 1.0
    code, out, _ = run(["bloch", "--alpha", "0.7071067811865476", "--beta", "0.7071067811865476"], capsys)
    doc = json.loads(out)
    assert (doc["x"], doc["y"], doc["z"]) == pytest.approx((1, 0, 0), abs=1e-12)
    code, out, _ = run(["bloch", *GOLDEN_1_ARGS], capsys)
    doc = json.loads(out)
    assert (doc["x"], doc["y"], doc["z"]) == pytest.approx(
        (0.44162268804075416, 0.8702533450850376, -0.2182395857216584), abs=1e-12
    )
    assert abs(doc["x"] ** 2 + doc["y"] ** 2 + doc["z"] ** 2 - 1) <= 1e-9


def test_bell(capsys):
    code, out, _ = run(["bell", "--shots", "500", "--seed", "2"], capsys)
    doc = json.loads(out)
    assert set(doc["counts"]) <= {"00", "11"} and doc["shots"] == 500


def test_remote_entangle_demo(capsys):
    code, out, _ = run(["remote-entangle-demo", "--seed", "1", "--shots", "200"], capsys)
    doc = json.loads(out)
    assert doc["status"] == "entangled" and doc["matched"] == "B" and doc["correlated_fraction"] == 1.0
    code, out, _ = run(
        ["remote-entangle-demo", "--seed", "1", "--decoys", "2", "--resolution", "0.05", "--tol", "0.05"], capsys
    )
    assert json.loads(out)["status"] == "ambiguous_match"


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("QUIDSIM_SEED", "77")
    _, out, _ = run(["bell", "--shots", "10"], capsys)
    assert json.loads(out)["seed"] == 77


def test_auto_seed_is_reported(capsys, monkeypatch):
    monkeypatch.delenv("QUIDSIM_SEED", raising=False)
    _, out, _ = run(["bell", "--shots", "10"], capsys)
    seed = json.loads(out)["seed"]
    _, again, _ = run(["bell", "--shots", "10", "--seed", str(seed)], capsys)
    assert again == out


def test_config_file_and_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# teleport counts\nprep-bit = 1\nshots=64\nseed = 4\nformat=json\n")
    _, out, _ = run(["teleport-counts", "--config", str(cfg)], capsys)
    doc = json.loads(out)
    assert (doc["prep_bit"], doc["shots"], doc["seed"]) == (1, 64, 4)
    _, out, _ = run(["teleport-counts", "--config", str(cfg), "--shots", "32"], capsys)
    assert json.loads(out)["shots"] == 32


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("colour=blue\n")
    code, _, err = run(["bloch", "--config", str(cfg)], capsys)
    assert code == 2 and "colour" in err


def test_json_round_trip(capsys):
    _, out, _ = run(["teleport-counts", "--prep-bit", "0", "--shots", "16", "--seed", "1"], capsys)
    doc = json.loads(out)
    assert json.loads(json.dumps(doc, indent=2)) == doc
    assert set(doc) == {"schema_version", "command", "prep_bit", "counts", "shots", "bob_error_rate", "noise", "seed"}


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "quidsim", "bloch", "--alpha", "1", "--beta", "0"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["z"] == 1.0


def test_internal_error_exit_1(capsys, monkeypatch):
    import quidsim.cli as cli

    def boom(args):
        raise RuntimeError("kaput")

    monkeypatch.setitem(cli.COMMANDS, "bloch", boom)
    code, out, err = run(["bloch", "--alpha", "1", "--beta", "0"], capsys)
    assert code == 1 and out == "" and "kaput" in err
