import json

import pytest

from quiverbs.cli import main

from conftest import GOLDEN

EXPECTED = GOLDEN / "expected"
D4_NUMERIC = "b1=1,b2=1,b3=2,b4=2"


def run_cli(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


@pytest.mark.parametrize("argv,expected,code", [
    (("slice", GOLDEN / "d4.q"), "slice_d4.txt", 0),
    (("slice", GOLDEN / "d4.q", "--trace"), "slice_d4_trace.txt", 0),
    (("slice", GOLDEN / "d4tilde.q"), "slice_d4tilde.txt", 0),
    (("slice", GOLDEN / "e6.q"), "slice_e6.txt", 2),
    (("multi", GOLDEN / "d5multi.q"), "multi_d5.txt", 0),
    (("decomp", GOLDEN / "d6.q"), "decomp_d6.txt", 0),
    (("decomp", GOLDEN / "d5decomp.q"), "decomp_d5.txt", 0),
    (("slice", GOLDEN / "d4.q", "--numeric", D4_NUMERIC, "--roots", "--llss"), "slice_d4_numeric.txt", 0),
    (("classical", "binary_cubic"), "classical_binary_cubic.txt", 0),
])
def test_golden_outputs(capsys, argv, expected, code):
    got, out = run_cli(capsys, *argv)
    assert got == code
    assert out.out == (EXPECTED / expected).read_text()


def test_sigma_file_prints_same_product(capsys):
    _, a = run_cli(capsys, "slice", GOLDEN / "d4.q")
    _, b = run_cli(capsys, "slice", GOLDEN / "d4sigma.q")
    assert a.out == b.out


def test_infeasible_exit(capsys):
    code, out = run_cli(capsys, "slice", GOLDEN / "d4.q", "--numeric", "b1=3,b2=1,b3=0,b4=2")
    assert code == 3
    assert "Infeasible" in out.out


def test_oracle_subcommand(capsys):
    code, out = run_cli(capsys, "oracle", GOLDEN / "d4.q", "--numeric", D4_NUMERIC)
    assert code == 0
    assert "s^4 + 6*s^3 + 13*s^2 + 12*s + 4" in out.out and "slicer agrees" in out.out


def test_oracle_zero_semi_invariant(capsys):
    code, _ = run_cli(capsys, "oracle", GOLDEN / "d4.q", "--numeric", "b1=3,b2=1,b3=0,b4=2")
    assert code == 3


def test_oracle_size_override(capsys):
    code, out = run_cli(capsys, "oracle", GOLDEN / "d4.q", "--numeric", D4_NUMERIC, "--max-monomials", "3")
    assert code == 4
    assert "estimated" in out.err


def test_decomp_oracle_check(capsys):
    code, out = run_cli(capsys, "decomp", GOLDEN / "d6.q", "--oracle-check", "--trace")
    assert code == 0
    assert "search agrees" in out.out and "stopped by" in out.out


@pytest.mark.parametrize("argv", [
    ("slice", "missing.q"),
    ("classical", "so_pair", "3"),
    ("classical", "so_pair", "x", "y"),
    ("slice", GOLDEN / "d4.q", "--numeric", "b1=1"),
    ("slice", GOLDEN / "d4.q", "--roots"),
])
def test_input_errors(capsys, argv):
    code, out = run_cli(capsys, *argv)
    assert code == 4
    assert out.err.startswith("input error")


def test_parse_error_exit(tmp_path, capsys):
    bad = tmp_path / "bad.q"
    bad.write_text("vertex 1\nwhat\n")
    code, out = run_cli(capsys, "slice", bad)
    assert code == 4 and "line 2" in out.err


def test_json_output(capsys):
    code, out = run_cli(capsys, "slice", GOLDEN / "d4.q", "--json")
    payload = json.loads(out.out)
    assert code == 0 and payload["status"] == "Complete"
    assert {"dvec", "a", "b"} <= set(payload["factors"]["factors"][0])


def test_roots_sorted_descending(capsys):
    _, out = run_cli(capsys, "classical", "dn_longest", "5", "--numeric", "b1=1,b2=1,b3=2,b4=1,b5=1", "--json")
    rts = [r for r, _ in json.loads(out.out)["roots"]]
    from fractions import Fraction
    assert [Fraction(r) for r in rts] == sorted((Fraction(r) for r in rts), reverse=True)


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "quiverbs", "slice", str(GOLDEN / "e6.q")], capture_output=True)
    assert res.returncode == 2
