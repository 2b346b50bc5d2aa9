import csv
import json
import math

import numpy as np
import pytest

from bellkey import cli
from bellkey.cli import EXIT_IO, EXIT_OK, EXIT_USAGE, main, row_consistent, save_state_file
from bellkey.linalg import PureState, tensor_product
from bellkey.multiparty import ghz_state


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def kv(text):
    return dict(line.split("=", 1) for line in text.strip().splitlines())


def test_analyze_origin(capsys):
    code, out, _ = run(capsys, "analyze", "--alpha", "0", "--beta", "0")
    d = kv(out)
    assert code == EXIT_OK
    assert (d["chsh"], d["iab"], d["iae"]) == ("1.414214", "1.000000", "0.000000")


def test_analyze_violating_point(capsys):
    _, out, _ = run(capsys, "analyze", "--alpha", "0.3927", "--beta", "0.3927")
    d = kv(out)
    assert d["violates"] == "1" and d["equivalence_consistent"] == "1"


def test_analyze_symmetric_json(capsys):
    code, out, _ = run(capsys, "analyze", "--alpha", "0.3", "--beta", "0.5", "--variant", "symmetric", "--json")
    d = json.loads(out)
    assert code == EXIT_OK
    assert abs(d["iae"] - d["ibe"]) <= 1e-12


def test_analyze_degrees(capsys):
    _, rad, _ = run(capsys, "analyze", "--alpha", str(math.pi / 8), "--beta", "0.2", "--json")
    _, deg, _ = run(capsys, "analyze", "--alpha", "22.5", "--beta", str(math.degrees(0.2)), "--degrees", "--json")
    assert json.loads(rad)["chsh"] == pytest.approx(json.loads(deg)["chsh"], abs=1e-12)


@pytest.mark.parametrize("alpha", ["-0.1", "1.6", "nan"])
def test_analyze_out_of_range(capsys, alpha):
    code, _, err = run(capsys, "analyze", "--alpha", alpha, "--beta", "0")
    assert code == EXIT_USAGE
    assert "outside" in err


def test_bad_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "--alpha", "0"])
    assert exc.value.code == EXIT_USAGE


def _read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


@pytest.mark.parametrize("variant", ["one-qubit", "symmetric"])
def test_scan_small_grid(capsys, tmp_path, variant):
    out = tmp_path / "scan.csv"
    code, stdout, _ = run(capsys, "scan", "--grid", "3", "--out", str(out), "--variant", variant)
    rows = _read_csv(out)
    assert code == EXIT_OK
    assert rows[0] == cli.ScanRecord.header()
    assert len(rows) == 10
    assert stdout.strip().endswith("inconsistent points outside boundary band: 0")
    # flags recomputable from the printed numbers
    for r in rows[1:]:
        d = dict(zip(rows[0], r))
        c, ab, ae, be = (float(d[k]) for k in ("chsh", "iab", "iae", "ibe"))
        assert int(d["violates"]) == (c > 1 + 1e-9)
        assert int(d["ck_direct"]) == (ab > ae)
        assert int(d["ck_reverse"]) == (ab > be)
        assert int(d["consistent"]) == row_consistent(c, ab, ae, be, variant)


def test_scan_alpha_major_and_reproducible(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "scan", "--grid", "5", "--out", str(a))
    run(capsys, "scan", "--grid", "5", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
    rows = _read_csv(a)[1:]
    assert [r[0] for r in rows[:5]] == ["0"] * 5
    assert rows[-1][:2] == [cli.fmt(math.pi / 2)] * 2


def test_scan_unwritable_path(capsys, tmp_path):
    code, _, err = run(capsys, "scan", "--grid", "2", "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == EXIT_IO
    assert "cannot write" in err


def test_scan_rejects_tiny_grid(capsys, tmp_path):
    code, _, _ = run(capsys, "scan", "--grid", "1", "--out", str(tmp_path / "x.csv"))
    assert code == EXIT_USAGE


def test_multiparty_ghz3(capsys):
    code, out, _ = run(capsys, "multiparty", "--ghz", "3", "--functional", "mk")
    d = kv(out)
    assert code == EXIT_OK
    assert d["value"] == "2.000000"
    assert d["degree"] == "FullDistillability"


def test_multiparty_product_state_file(capsys, tmp_path):
    rng = np.random.default_rng(4)
    qubits = [rng.normal(size=2) + 1j * rng.normal(size=2) for _ in range(3)]
    path = tmp_path / "product.json"
    save_state_file(path, PureState.from_amplitudes(tensor_product(*qubits), normalize=True))
    code, out, _ = run(capsys, "multiparty", "--state-file", str(path), "--functional", "wwzb", "--json")
    d = json.loads(out)
    assert code == EXIT_OK
    assert d["value"] <= 1 + 1e-6
    assert d["degree"] == "NoConclusion"


def test_multiparty_density_matrix_file(capsys, tmp_path):
    rho = ghz_state(3).density_matrix()
    path = tmp_path / "rho.json"
    path.write_text(json.dumps({"num_qubits": 3, "amplitudes": None, "density_matrix": [[z.real, z.imag] for z in rho.ravel()]}))
    code, out, _ = run(capsys, "multiparty", "--state-file", str(path))
    assert code == EXIT_OK
    assert kv(out)["value"] == "2.000000"


def test_state_file_errors(capsys, tmp_path):
    code, _, _ = run(capsys, "multiparty", "--state-file", str(tmp_path / "nope.json"))
    assert code == EXIT_IO
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"num_qubits": 2, "amplitudes": [[1, 0], [1, 0], [0, 0], [0, 0]]}))
    code, _, err = run(capsys, "multiparty", "--state-file", str(bad))
    assert code == EXIT_USAGE and "normalized" in err
    bad.write_text("{not json")
    assert run(capsys, "multiparty", "--state-file", str(bad))[0] == EXIT_USAGE


def test_state_file_round_trip(tmp_path):
    path = tmp_path / "ghz.json"
    save_state_file(path, ghz_state(4))
    np.testing.assert_allclose(cli.load_state_file(path).amplitudes, ghz_state(4).amplitudes)


def test_multiparty_ghz_out_of_range(capsys):
    assert run(capsys, "multiparty", "--ghz", "9")[0] == EXIT_USAGE


def test_verify_passes(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == EXIT_OK
    assert "FAIL" not in out and out.count("PASS") == 6


def test_verify_detects_corrupted_closed_form(capsys, monkeypatch):
    import bellkey.verify as verify

    monkeypatch.setattr(verify, "info_ae", lambda p: 0.0)
    code, out, _ = run(capsys, "verify")
    assert code == cli.EXIT_VERIFY
    assert "FAIL" in out


def test_verify_verdicts_seed_independent(capsys):
    from bellkey.verify import run_all

    a, b = run_all(7), run_all(8)
    assert [c.passed for c in a] == [c.passed for c in b]
