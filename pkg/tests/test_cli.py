import io
import json
import sys

import pytest

from qutrit_arith.cli import main
from qutrit_arith.circuit import from_json, gate_counts, validate
from qutrit_arith.qasm import parse_qasm


def run_cli(argv, stdin="", capsys=None, monkeypatch=None):
    if monkeypatch is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


CCX_QASM = "OPENQASM 2.0;\nqreg q[3];\nccx q[0],q[1],q[2];\n"


@pytest.fixture
def cli(capsys, monkeypatch):
    return lambda argv, stdin="": run_cli(argv, stdin, capsys, monkeypatch)


def test_generate_adder_qasm(cli):
    code, out, _ = cli(["generate", "adder", "--n", "3", "--format", "qasm"])
    assert code == 0 and parse_qasm(out).num_wires == 7


def test_generate_multiplier_json(cli):
    code, out, _ = cli(["generate", "multiplier", "--na", "3", "--nb", "2"])
    assert code == 0 and validate(from_json(out)) == []


def test_generate_out_of_range(cli):
    code, _, err = cli(["generate", "adder", "--n", "99"])
    assert code == 1 and "[1, 8]" in err


def test_usage_errors(cli):
    for argv in (["decompose", "--variant", "Z"], ["generate", "adder"], ["estimate", "--op", "add"],
                 ["count", "--format", "qasm"], []):
        with pytest.raises(SystemExit) as info:
            cli(argv)
        assert info.value.code == 2


def test_decompose_qutrit(cli):
    code, out, _ = cli(["decompose", "-", "--variant", "qutrit"], CCX_QASM)
    assert code == 0
    assert sum(line.startswith("tcx_") for line in out.splitlines()) == 3


def test_pipeline_via_files(cli, tmp_path):
    gen, dec = tmp_path / "ccx.qasm", tmp_path / "c.json"
    gen.write_text(CCX_QASM)
    assert cli(["decompose", str(gen), "--variant", "C", "--format", "json", "-o", str(dec)])[0] == 0
    code, out, _ = cli(["count", str(dec)])
    assert code == 0 and json.loads(out)["depth"] == 8


def test_pipeline_via_stdin(cli):
    _, gen, _ = cli(["generate", "adder", "--n", "2"])
    _, dec, _ = cli(["decompose", "--variant", "qutrit"], gen)
    code, out, _ = cli(["count", "--format", "csv"], dec)
    header, row = out.strip().splitlines()
    counts = dict(zip(header.split(","), map(int, row.split(","))))
    assert code == 0
    assert counts["ternary_cnot_count"] == 3 * gate_counts(from_json(gen)).toffoli_count


def test_estimate(cli):
    code, out, _ = cli(["estimate", "--op", "sqrt", "--n", "4", "--route", "qutrit"])
    d = json.loads(out)
    assert code == 0 and d["estimate"]["ternary_cnot"] == 48
    assert d["success"]["p_success"] == pytest.approx(0.99**48 * 2.718281828459045 ** (-48 / 30), rel=1e-12)


def test_estimate_domain(cli):
    code, _, err = cli(["estimate", "--op", "add", "--n", "4"])
    assert code == 1 and ">= 8" in err


def test_sweep_csv(cli):
    code, out, _ = cli(["sweep", "--op", "mul", "--from", "2", "--to", "4"])
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "n,p_success_conventional,p_success_qutrit,error_decrease_percent"
    assert [l.split(",")[0] for l in lines[1:]] == ["2", "3", "4"]
    assert all(len(v) <= 12 for l in lines[1:] for v in l.split(","))


def test_sweep_noiseless(cli):
    _, out, _ = cli(["sweep", "--op", "add", "--from", "8", "--to", "9", "--eps1", "0", "--eps2", "0",
                     "--gate-time", "0"])
    assert out.strip().splitlines()[1] == "8,1,1,0"


def test_simulate(cli):
    code, out, _ = cli(["simulate", "-", "--input", "110"], CCX_QASM)
    assert code == 0 and json.loads(out)["amplitudes"] == {"111": [1.0, 0.0]}


def test_simulate_noisy_fidelity(cli):
    _, dec, _ = cli(["decompose", "--variant", "qutrit"], CCX_QASM)
    code, out, _ = cli(["simulate", "--input", "110", "--noise", "--compare-ideal"], dec)
    d = json.loads(out)
    assert code == 0 and 0.5 < d["fidelity"] < 1
    assert d["trace"] == pytest.approx(1, abs=1e-12)


def test_bad_input_digits(cli):
    assert cli(["simulate", "-", "--input", "12"], CCX_QASM)[0] == 1


def test_missing_file(cli, tmp_path):
    assert cli(["count", str(tmp_path / "nope.qasm")])[0] == 1


def test_deterministic(cli):
    argv = ["sweep", "--op", "sqrt", "--from", "2", "--to", "10", "--format", "json"]
    assert cli(argv)[1] == cli(argv)[1]
    g = ["generate", "multiplier", "--na", "2", "--nb", "2", "--format", "qasm", "--seed", "7"]
    assert cli(g)[1] == cli(g)[1]
