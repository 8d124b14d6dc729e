import json
import subprocess
import sys

import pytest

from zetaflat.cli import entry, parse_range, parse_side
from zetaflat.index_algebra import Index, indices_up_to_weight


def run_cli(argv, capsys):
    code = entry(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_eval_examples(capsys):
    code, out, _ = run_cli(["eval", "zeta", "--index", "2", "--upper", "4"],
                           capsys)
    assert code == 0 and out == "49/36\n"
    code, out, _ = run_cli(
        ["eval", "connector", "--N", "5", "--n", "2", "--m", "3"], capsys)
    assert code == 0 and out == "3/10\n"
    code, out, _ = run_cli(["eval", "zeta", "--index", "1,2", "--upper", "1"],
                           capsys)
    assert code == 0 and out == "0/1\n"


def test_eval_variants(capsys):
    cases = [
        (["eval", "zeta-star", "--index", "1,1", "--upper", "3"], "7/4"),
        (["eval", "zeta-flat", "--index", "1", "--upper", "2"], "1/1"),
        (["eval", "zeta-flat", "--index", "2", "--upper", "3"], "5/4"),
        (["eval", "riemann", "--index", "2", "--upper", "3"], "1/4"),
        (["eval", "Z", "--N", "3", "--left", "2,1", "--right", "-"], "11/12"),
        (["eval", "Z", "--N", "3", "--left", "-", "--right", "1,2"], "5/12"),
    ]
    for argv, expected in cases:
        code, out, _ = run_cli(argv, capsys)
        assert code == 0
        assert out == expected + "\n"


def test_eval_enum_method_and_decimal(capsys):
    base = ["eval", "zeta", "--index", "1,2", "--upper", "6"]
    _, dp_out, _ = run_cli(base, capsys)
    _, enum_out, _ = run_cli(base + ["--method", "enum"], capsys)
    assert dp_out == enum_out
    code, out, _ = run_cli(base + ["--decimal", "4"], capsys)
    assert code == 0
    frac, dec = out.split()
    assert frac == dp_out.strip()
    assert len(dec.split(".")[1]) == 4


def test_eval_rejects_bad_input(capsys):
    code, _, err = run_cli(["eval", "zeta", "--index", "2,x", "--upper", "4"],
                           capsys)
    assert code == 2 and "error" in err
    code, _, err = run_cli(["eval", "riemann", "--index", "2,1",
                            "--upper", "5"], capsys)
    assert code == 2 and "admissible" in err
    code, _, err = run_cli(["eval", "Z", "--N", "3", "--left", "-",
                            "--right", "-"], capsys)
    assert code == 2


def test_cap_exit_codes(capsys):
    cases = [
        ["eval", "zeta", "--index", "2", "--upper", "5000"],
        ["eval", "zeta", "--index", "3,3,3", "--upper", "4"],
        ["verify", "duality-a", "--primes", "3..211", "--max-weight", "2"],
        ["verify", "padic", "--n-values", "4", "--max-weight", "1"],
        ["verify", "duality-r", "--powers", "4..13"],
        ["trace", "--index", "4,4,1", "--N", "5"],
    ]
    for argv in cases:
        code, _, err = run_cli(argv, capsys)
        assert code == 3, argv
        assert "cap exceeded" in err


def test_cap_override(capsys):
    code, out, _ = run_cli(["eval", "zeta", "--index", "3,3,3", "--upper", "4",
                            "--cap-weight", "9"], capsys)
    assert code == 0 and out.endswith("\n")


def test_trace_text_and_json(capsys):
    code, out, _ = run_cli(["trace", "--index", "2", "--N", "2"], capsys)
    assert code == 0
    assert out.splitlines() == ["Z_2(2 | ) = 5/4", "Z_2( | 2) = 5/4"]
    code, out, _ = run_cli(["trace", "--index", "1,2", "--N", "5", "--json"],
                           capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["index"] == "1,2" and doc["N"] == 5 and doc["all_equal"]
    assert len(doc["stages"]) == 3


def test_verify_main_counts(capsys):
    code, out, _ = run_cli(["verify", "main", "--max-weight", "3",
                            "--max-upper", "6"], capsys)
    assert code == 0
    lines = out.splitlines()
    indices = [k for k in indices_up_to_weight(3) if k]
    assert lines[-1] == f"PASS {6 * len(indices)}/{6 * len(indices)}"
    assert all(line.startswith("ok  ") for line in lines[:-1])


def test_verify_json_stream(capsys):
    code, out, err = run_cli(["verify", "log2", "--max-upper", "5", "--json"],
                             capsys)
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert len(rows) == 5
    for row in rows:
        assert set(row) == {"check_id", "inputs", "lhs", "rhs", "pass",
                            "elapsed_ms"}
        assert row["check_id"] == "log2" and row["pass"] is True
    assert err.strip() == "PASS 5/5"


def test_verify_suites_small(capsys):
    suites = [
        ["verify", "transport", "--max-upper", "8"],
        ["verify", "telescope", "--max-weight", "3", "--max-upper", "5"],
        ["verify", "duality-a", "--primes", "3..13", "--max-weight", "3"],
        ["verify", "antipode", "--primes", "3..13", "--max-weight", "3"],
        ["verify", "hoffman-identity", "--max-weight", "3",
         "--max-upper", "8"],
        ["verify", "padic", "--primes", "3..13", "--max-weight", "2",
         "--n-values", "1,2"],
        ["verify", "seki", "--primes", "3..13", "--max-weight", "2",
         "--n-values", "2"],
    ]
    for argv in suites:
        code, out, _ = run_cli(argv, capsys)
        assert code == 0, argv
        assert out.splitlines()[-1].startswith("PASS ")


def test_verify_duality_r_default_indices(capsys):
    code, out, _ = run_cli(["verify", "duality-r", "--powers", "4..6"],
                           capsys)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 5 and lines[-1] == "PASS 4/4"
    assert "k=2,2" in lines[2]


def test_verify_duality_r_csv(capsys):
    code, out, err = run_cli(["verify", "duality-r", "--index", "3",
                              "--powers", "4..6", "--csv"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "N,diff_num,diff_den,diff_decimal"
    assert len(lines) == 4
    fences = []
    for line in lines[1:]:
        upper, num, den, dec = line.split(",")
        fences.append(int(upper))
        assert int(num) > 0 and int(den) > 0
        assert dec.startswith("0.")
    assert fences == [16, 32, 64]
    assert err.strip() == "PASS 1/1"


def test_verify_csv_needs_single_index(capsys):
    code, _, err = run_cli(["verify", "duality-r", "--csv"], capsys)
    assert code == 2 and "--csv" in err
    code, _, _ = run_cli(["verify", "duality-r", "--index", "3", "--index",
                          "1,2", "--powers", "4..5", "--csv"], capsys)
    assert code == 2
    code, _, _ = run_cli(["verify", "main", "--max-weight", "2",
                          "--max-upper", "3", "--csv"], capsys)
    assert code == 2


def test_verify_jobs_matches_sequential(capsys):
    argv = ["verify", "telescope", "--max-weight", "3", "--max-upper", "4"]
    _, seq, _ = run_cli(argv, capsys)
    _, par, _ = run_cli(argv + ["--jobs", "3"], capsys)
    assert seq == par


def test_bad_range_and_unknown_suite(capsys):
    code, _, err = run_cli(["verify", "duality-a", "--primes", "banana",
                            "--max-weight", "2"], capsys)
    assert code == 2 and "range" in err
    with pytest.raises(SystemExit) as exc:
        entry(["verify", "nonsense"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_parse_helpers():
    assert parse_range("3..199") == (3, 199)
    assert parse_range("13") == (13, 13)
    assert parse_side("-") == Index()
    assert parse_side("") == Index()
    assert parse_side("2,1") == Index((2, 1))
    with pytest.raises(ValueError):
        parse_range("a..b")


def test_console_module_invocation():
    proc = subprocess.run(
        [sys.executable, "-m", "zetaflat.cli", "eval", "zeta",
         "--index", "2", "--upper", "4"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "49/36\n"
