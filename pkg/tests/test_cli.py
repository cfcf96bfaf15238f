import csv
import io
import json
from fractions import Fraction

import pytest

import egfverify.cli as cli
from egfverify.cli import main, table_from_json
from egfverify.families import FAMILIES, family, family_info
from egfverify.identities import IdentityCase, Registry, seq


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_text(capsys):
    code, out, _ = run(capsys, "expand", "--family", "tangent", "--order", "4")
    assert code == 0
    assert out.splitlines() == ["0  1", "1  x - 1", "2  x^2 - 2*x",
                                "3  x^3 - 3*x^2 + 2", "4  x^4 - 4*x^3 + 8*x"]


def test_expand_hermite_json(capsys):
    code, out, _ = run(capsys, "expand", "--family", "hermite", "--order", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["family"] == "hermite"
    row = data["rows"][2]
    assert row["text"] == "x^2 + 2*y"
    assert row["terms"] == [{"ex": 2, "ey": 0, "eu": 0, "el": 0, "num": "1", "den": "1"},
                            {"ex": 0, "ey": 1, "eu": 0, "el": 0, "num": "2", "den": "1"}]


@pytest.mark.parametrize("argv,expected", [
    (["--family", "hermite", "--n", "2", "--x", "1/2", "--y", "3"], "25/4"),
    (["--family", "tangent", "--n", "3", "--x", "2"], "-2"),
    (["--family", "euler", "--n", "1", "--x", "0"], "-1/2"),
    (["--family", "bernoulli", "--n", "2", "--r", "2"], "5/6"),
    (["--family", "poly-bernoulli", "--n", "2", "--k", "1", "--x", "-1"], "1/6"),
    (["--family", "mod-deg-bernoulli", "--n", "2", "--u", "2", "--x", "1"], "1/3"),
])
def test_eval(capsys, argv, expected):
    code, out, _ = run(capsys, "eval", *argv)
    assert code == 0
    assert out.strip() == expected


def test_eval_matches_library(capsys):
    for name in ("hermite-tangent", "mod-deg-hermite-tangent", "carlitz-deg-bernoulli"):
        p = family(name, 5)[5]
        pt = {"x": Fraction(2, 3), "y": Fraction(-1, 4), "u": Fraction(3, 2), "l": Fraction(1, 5)}
        code, out, _ = run(capsys, "eval", "--family", name, "--n", "5",
                           *[f"--{k}={v}" for k, v in pt.items()])
        assert code == 0 and Fraction(out.strip()) == p.evaluate(pt)


def test_eval_u_zero_laurent(capsys):
    code, _, err = run(capsys, "eval", "--family", "mod-deg-bernoulli", "--n", "0", "--u", "0")
    assert code == 2
    assert "SubstituteZeroIntoLaurent" in err


@pytest.mark.parametrize("argv", [
    ["expand", "--family", "nope", "--order", "3"],
    ["expand", "--family", "tangent", "--order", "3", "--k", "2"],
    ["eval", "--family", "hermite", "--n", "2", "--x", "0.5"],
    ["verify", "--case", "bogus", "--order", "4"],
    ["verify", "--all", "--order", "0"],
    ["expand", "--family", "tangent"],
])
def test_usage_errors_exit_2(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == 2


def test_verify_single_case(capsys):
    code, out, _ = run(capsys, "verify", "--case", "T1a", "--order", "8")
    assert code == 0
    data = json.loads(out)
    assert [e["id"] for e in data["cases"]] == ["T1a"]
    assert data["cases"][0]["verdict"] == "Verified"


def test_verify_exit_1_on_mandatory_failure(capsys, monkeypatch):
    bad = IdentityCase("bad", "false on purpose", "T_n(x) = x^n",
                       lambda E, p, N: seq(E.fam("tangent", N)),
                       lambda E, p, N: {(n,): E.x ** n for n in range(N + 1)},
                       mandatory=True)
    monkeypatch.setattr(cli, "register_paper_catalog", lambda: Registry([bad]))
    code, out, err = run(capsys, "verify", "--all", "--order", "4")
    assert code == 1
    assert "bad" in err
    assert json.loads(out)["mandatory"]["failing"] == ["bad"]


def test_verify_out_file(tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--case", "I1", "--case", "I2", "--order", "5",
                       "--out", str(target))
    assert code == 0 and out == ""
    assert [e["id"] for e in json.loads(target.read_text())["cases"]] == ["I1", "I2"]


def test_report_csv(capsys):
    code, out, _ = run(capsys, "verify", "--case", "I4", "--order", "6", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {r["check"] for r in rows} == {"printed", "I4-complement"}
    assert all(r["status"] == "Verified" for r in rows if r["check"] == "I4-complement")


def _family_args(name):
    return ["--k", "2"] if family_info(name).is_poly else []


@pytest.mark.parametrize("name", sorted(FAMILIES))
def test_json_round_trip(capsys, name):
    code, out, _ = run(capsys, "expand", "--family", name, "--order", "10", "--format", "json",
                       *_family_args(name))
    assert code == 0
    k = 2 if family_info(name).is_poly else None
    expected = family(name, 10, k=k)
    rows = table_from_json(out)
    assert [n for n, _ in rows] == list(range(11))
    assert [p for _, p in rows] == list(expected.coeffs)


@pytest.mark.parametrize("name", ["hermite-tangent", "mod-deg-hermite-tangent", "poly-genocchi"])
def test_csv_matches_json(capsys, name):
    _, js, _ = run(capsys, "expand", "--family", name, "--order", "8", "--format", "json",
                   *_family_args(name))
    _, cs, _ = run(capsys, "expand", "--family", name, "--order", "8", "--format", "csv",
                   *_family_args(name))
    from_json = [(row["n"], t["ex"], t["ey"], t["eu"], t["el"], t["num"], t["den"])
                 for row in json.loads(js)["rows"] for t in row["terms"]]
    from_csv = [(int(r["n"]), int(r["ex"]), int(r["ey"]), int(r["eu"]), int(r["el"]),
                 r["num"], r["den"]) for r in csv.DictReader(io.StringIO(cs))]
    assert from_json == from_csv


def test_families_listing(capsys):
    code, out, _ = run(capsys, "families")
    assert code == 0
    assert [line.split()[0] for line in out.splitlines()] == list(FAMILIES)
