import csv
import io
import json
import subprocess
import sys

import pytest

from frickedim.cli import CSV_COLUMNS, main, parse_range
from frickedim.arith import InvalidInput


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dim_json_worked_example(capsys):
    code, out, _ = run(capsys, "dim", "--group", "gamma0+", "--level", "221", "--weight", "6",
                       "--chi", "p13,p17", "--sign", "-1", "--format", "json")  # fmt: skip
    assert code == 0
    data = json.loads(out)
    assert data["dims"] == {"cusp": 52, "eisenstein": 2, "modular": 54}
    assert data["group"] == "gamma0+" and data["signs"] == "-1"
    assert set(data["terms"]) == {"index", "e2", "e3", "d8", "d12", "cusp"}
    assert all("/" in v for v in data["terms"].values())


def test_dim_text(capsys):
    code, out, _ = run(capsys, "dim", "--group", "gamma0", "--level", "221", "--weight", "6", "--chi", "p13,p17")
    assert code == 0
    assert "dim S_k = 104" in out


def test_dim_star(capsys):
    code, out, _ = run(capsys, "dim", "--group", "gamma0*", "--level", "221", "--weight", "6",
                       "--chi", "p13,p17", "--signs", "13:-1,17:-1", "--format", "json")  # fmt: skip
    assert code == 0 and json.loads(out)["dims"]["cusp"] == 26


@pytest.mark.parametrize(
    "argv",
    [
        ["dim", "--group", "gamma0+", "--level", "5", "--weight", "3", "--chi", "p13"],
        ["dim", "--group", "gamma0+", "--level", "7", "--weight", "3", "--chi", "p7", "--sign", "+1"],
        ["dim", "--group", "gamma0*", "--level", "12", "--weight", "2"],
        ["dim", "--level", "5", "--weight", "2", "--chi", "x5"],
        ["dim", "--level", "5..3", "--weight", "2"],
        ["genera", "--disc", "-5"],
        ["genera"],
        ["verify", "--suite", "nope"],
        ["dim", "--group", "gamma9", "--level", "5", "--weight", "2"],
    ],
)
def test_invalid_input_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_weight_one_exit_3(capsys):
    code, _, err = run(capsys, "dim", "--level", "5", "--weight", "1")
    assert code == 3 and "weight" in err


def test_table_csv(capsys):
    code, out, _ = run(capsys, "table", "--group", "gamma0+", "--level", "2..10", "--weight", "2..12",
                       "--chi", "all", "--sign", "all", "--format", "csv")  # fmt: skip
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert tuple(rows[0]) == CSV_COLUMNS
    first = rows[1]
    assert first[:5] == ["gamma0+", "2", "triv", "+1", "2"] and first[5] == "0"
    assert any(r[-1] == "1" for r in rows[1:])


def test_table_star_row(capsys):
    code, out, _ = run(capsys, "table", "--group", "gamma0*", "--level", "221", "--weight", "6",
                       "--chi", "all", "--format", "csv")  # fmt: skip
    rows = [r for r in csv.reader(io.StringIO(out))][1:]
    hit = [r for r in rows if r[2] == "p13,p17" and r[3] == "13:-1,17:-1"]
    assert hit and hit[0][5] == "26"


def test_table_is_deterministic(capsys):
    argv = ["table", "--group", "gamma0+", "--level", "20..40", "--weight", "2..6", "--chi", "all", "--format", "json"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_json_roundtrip_is_byte_identical(capsys):
    from frickedim.dims import DimReport

    _, out, _ = run(capsys, "table", "--group", "gamma0", "--level", "30..33", "--weight", "2..5",
                    "--chi", "all", "--format", "json")  # fmt: skip
    data = json.loads(out)
    assert json.dumps([DimReport.from_dict(d).to_dict() for d in data]) == out.strip()


def test_genera_65(capsys):
    code, out, _ = run(capsys, "genera", "--level", "65", "--format", "json")
    data = json.loads(out)
    assert data["characters"] == ["(-1/.)", "(./5)", "(./13)"]
    assert [g["signs"] for g in data["genera"]] == [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]
    assert all(len(g["forms"]) == 2 for g in data["genera"])


def test_genera_small(capsys):
    code, out, _ = run(capsys, "genera", "--disc", "-4", "--format", "csv")
    assert code == 0 and len(out.strip().splitlines()) == 2
    code, out, _ = run(capsys, "genera", "--level", "221", "--format", "json")
    data = json.loads(out)
    assert sum(len(g["forms"]) for g in data["genera"]) == 16


def test_verify_worked_example(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "worked-example")
    assert code == 0 and out.startswith("PASS worked-example")


def test_verify_sum_identity_small(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "sum-identity", "--max-level", "30")
    assert code == 0 and "FAIL" not in out


def test_parse_range():
    assert parse_range("7", "level", 100) == range(7, 8)
    assert parse_range("2..5", "level", 100) == range(2, 6)
    with pytest.raises(InvalidInput):
        parse_range("2..500", "level", 100)
    with pytest.raises(InvalidInput):
        parse_range("a", "level", 100)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "frickedim", "dim", "--level", "11", "--weight", "2", "--format", "json"],
        capture_output=True, text=True,
    )  # fmt: skip
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["dims"]["cusp"] == 1
