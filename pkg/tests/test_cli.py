import csv
import io
import json

import pytest

from yflattice.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cover(capsys):
    code, out, _ = run(capsys, "cover", "--word", "222121112", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data["successors"]) == 5 and len(data["predecessors"]) == 4
    assert data["schema_version"] == 1


def test_dim_and_kernel(capsys):
    assert run(capsys, "dim", "--from", "e", "--to", "21")[1].strip() == "2"
    code, out, _ = run(capsys, "dim", "--from", "2", "--to", "211", "--format", "json")
    assert json.loads(out)["kernel"] == "1/3"


def test_level(capsys):
    code, out, _ = run(capsys, "level", "--n", "2")
    assert code == 0 and out.split() == ["11", "2"]


def test_chars(capsys):
    code, out, _ = run(capsys, "chars", "--n", "3", "--check", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert data["rows"] == {"111": ["1", "1", "2"], "12": ["1", "-1", "0"], "21": ["1", "1", "-1"]}
    code, out, _ = run(capsys, "chars", "--n", "2", "--format", "csv")
    assert out.splitlines() == ["u,11,2", "11,1,1", "2,1,-1"]
    assert json.loads(run(capsys, "chars", "--n", "1", "--format", "json")[1])["rows"] == {"1": ["1"]}


def test_harmonic_eval(capsys):
    code, out, _ = run(capsys, "harmonic", "eval", "--kind", "plancherel", "--level", "4", "--format", "json")
    data = json.loads(out)
    from fractions import Fraction
    assert code == 0 and sum(Fraction(x) for x in data["central_measure"].values()) == 1
    code, out, _ = run(capsys, "harmonic", "eval", "--kind", "summable", "--spec",
                       "positions=1,4,9,16;tailbound=0.05", "--level", "2", "--format", "json")
    vals = json.loads(out)["values"]
    assert set(vals["2"]) == {"lo", "hi", "width"}


def test_harmonic_contracted_p_value(capsys):
    code, out, _ = run(capsys, "harmonic", "eval", "--kind", "summable", "--spec", "positions=3", "--tau", "1/2",
                       "--level", "3", "--p", "2", "--format", "json")
    assert json.loads(out)["p_value"]["value"] == "1/12"


def test_walk(capsys):
    code, out, _ = run(capsys, "walk", "--level", "3", "--samples", "2000", "--seed", "5", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["word"] for r in rows] == ["111", "12", "21"]
    assert list(rows[0]) == ["word", "count", "frequency", "exact_probability", "abs_error"]
    assert sum(int(r["count"]) for r in rows) == 2000
    again = run(capsys, "walk", "--level", "3", "--samples", "2000", "--seed", "5", "--format", "csv")[1]
    assert again == out
    code, out, _ = run(capsys, "walk", "--kind", "mixed", "--tau", "1", "--base", "type1:2", "--level", "2",
                       "--samples", "100", "--format", "json")
    assert json.loads(out)["rows"][1]["count"] == 100


def test_converge(capsys):
    code, out, _ = run(capsys, "converge", "--beta", "1/2", "--word", "positions=3", "--u", "2", "--nmax", "2000",
                       "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["n", "pi_wn", "beta_hat", "psi_value", "target", "abs_error"]
    assert rows[-1]["n"] == "2000" and float(rows[-1]["abs_error"]) <= 0.02


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "poset", "--nmax", "10")
    assert code == 0 and out.startswith("[PASS]")
    code, out, _ = run(capsys, "verify", "--suite", "inequalities", "--trials", "200", "--format", "json")
    assert code == 0 and json.loads(out)["passed"]


@pytest.mark.parametrize("argv", [
    ["cover", "--word", "123"],
    ["cover", "--word", ""],
    ["level", "--n", "99"],
    ["chars", "--n", "40"],
    ["harmonic", "eval", "--kind", "type1"],
    ["harmonic", "eval", "--kind", "plancherel", "--tau", "3/2"],
    ["walk", "--kind", "mixed"],
    ["converge", "--beta", "x", "--word", "positions=3"],
    ["converge", "--beta", "1/2", "--word", "positions=3,4"],
    ["verify", "--suite", "poset", "--nmax", "40"],
    ["level"],
    ["nonsense"],
])
def test_bad_input_exits_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.args"
    cfg.write_text("level\n--n\n3\n--format\njson\n")
    code, out, _ = run(capsys, f"@{cfg}")
    assert code == 0 and json.loads(out)["size"] == 3


def test_output_is_byte_stable(capsys):
    a = run(capsys, "harmonic", "eval", "--kind", "type1", "--word", "211", "--level", "5", "--format", "json")[1]
    b = run(capsys, "harmonic", "eval", "--kind", "type1", "--word", "211", "--level", "5", "--format", "json")[1]
    assert a == b
