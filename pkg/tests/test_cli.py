import io
import json
from importlib import resources

import jsonschema
import pytest

from monomial_poincare.cli import ParseError, UsageError, main, parse_ideal, parse_rational
from monomial_poincare.monomial import minimalize

SCHEMA = json.loads(resources.files("monomial_poincare").joinpath("schema.json").read_text())


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run("--json", *argv)
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_parse_ideal():
    assert parse_ideal("x^2, x*y, y^3") == minimalize([(2, 0), (1, 1), (0, 3)])
    assert parse_ideal(" x1^2 ,x2 ^ 3 ") == minimalize([(2, 0), (0, 3)])
    assert parse_ideal("x, y, z*w").dim == 4
    assert parse_ideal("x, y, 1").is_unit


@pytest.mark.parametrize("text, pos", [("x^2, *y", 5), ("x^0", 2), ("x, q", 3), ("x,", 2), ("x5", 0), ("x y", 2)])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_ideal(text)
    assert info.value.pos == pos


def test_constant_ideal_has_no_dimension():
    with pytest.raises(UsageError):
        parse_ideal("1")


def test_rationals():
    assert parse_rational("5/6") == parse_rational("10/12")
    assert parse_rational("-3") == -3
    for bad in ("0.5", "1/", "a", "1/2/3", "1/0"):
        with pytest.raises(UsageError):
            parse_rational(bad)


def test_documented_examples():
    assert run("jumps", "-a", "x^2, y^3", "--max", "1") == (0, "5/6  mult 1  ideal x, y\n", "")
    assert run("poincare", "-a", "x, y", "--expand", "4") == (0, "T^2/(1-T)^2\nT^2 + 2T^3 + 3T^4\n", "")
    assert run("mult", "-a", "x, y", "-c", "1/10") == (0, "(1)\n", "")


def test_other_commands():
    assert run("lct", "-a", "x^2, y^3")[1] == "5/6\n"
    assert run("test", "-a", "x^2, y^3", "-c", "5/6", "--char", "7")[1] == "x, y\n"
    assert run("hpoly", "-a", "x, y", "-c", "1")[1] == "T\n"
    assert run("hpoly", "-a", "x, y", "-c", "1", "--left")[1] == "T^2\n"
    assert run("tor", "-a", "x^2, y^2", "-j", "3", "-J", "x, y")[1] == "Tor_0  1\nTor_1  4\nTor_2  3\n"


def test_exit_codes():
    assert run("mult", "-a", "x, y", "-c", "0.5")[0] == 1
    assert run("mult", "-a", "x*y", "-c", "1")[0] == 1
    assert run("test", "-a", "x, y", "-c", "1", "--char", "6")[0] == 1
    assert run("frobnicate")[0] == 1
    code, _, err = run("mult", "-a", "x^2,,y", "-c", "1")
    assert code == 1 and "position 4" in err


def test_verify_examples():
    code, out, _ = run("verify", "rationality", "-a", "x^2, y^3", "--order", "20")
    assert code == 0 and out.endswith("rationality: PASS (1 checks, 0 failed)\n")
    code, out, _ = run("verify", "test-vs-mult", "-a", "x^2, y^2", "--char", "3", "--max", "3")
    assert code == 0 and "FAIL" not in out
    code, out, _ = run("verify", "skoda", "-a", "x, y")
    assert code == 0
    assert out.splitlines()[:2] == ["PASS  multiplier (x, y) at 3", "PASS  multiplier (x, y) at 4"]


def test_verify_no_parameter_reduction_is_precondition():
    assert run("verify", "cmform", "-a", "x^3, x*y, y^3")[0] == 1


def test_verify_json():
    code, doc = run_json("verify", "excess", "-a", "x, y")
    assert code == 0 and doc["passed"]
    assert [c["details"]["rho"] for c in doc["checks"]] == ["1", "1"]


@pytest.mark.parametrize("argv", [
    ["lct", "-a", "x^2, y^3"],
    ["jumps", "-a", "x^2, y^3", "--max", "2"],
    ["jumps", "-a", "x^2, y^3", "--max", "1", "--char", "5"],
    ["mult", "-a", "x, y", "-c", "3"],
    ["test", "-a", "x, y", "-c", "3", "--char", "2"],
    ["poincare", "-a", "x^2, y^3", "--expand", "3"],
    ["hpoly", "-a", "x^2, y^3", "-c", "5/6"],
    ["tor", "-a", "x, y, z", "-j", "2", "-J", "x^2, y, z"],
    ["verify", "lemma42", "-a", "x^2, y^2", "-N", "3"],
])
def test_json_validates_and_is_deterministic(argv):
    first = run("--json", *argv)
    assert first == run("--json", *argv)
    jsonschema.validate(json.loads(first[1]), SCHEMA)


def test_json_keys():
    _, doc = run_json("jumps", "-a", "x^2, y^3", "--max", "1")
    assert doc["jumps"] == [{"c": "5/6", "multiplicity": 1, "ideal": [[0, 1], [1, 0]]}]
    _, doc = run_json("poincare", "-a", "x, y")
    assert doc["poincare"] == {"e": 1, "classes": [{"c": "1", "numerator": [0, 1], "k": 2}],
                               "rendering": "T^2/(1-T)^2"}


def test_cache_directory(tmp_path, monkeypatch):
    monkeypatch.setenv("MONOMIAL_POINCARE_CACHE", str(tmp_path))
    first = run("jumps", "-a", "x^2, y^3", "--max", "2")
    assert len(list(tmp_path.iterdir())) == 1
    assert run("jumps", "-a", "x^2, y^3", "--max", "2") == first
    monkeypatch.delenv("MONOMIAL_POINCARE_CACHE")
    assert run("jumps", "-a", "x^2, y^3", "--max", "2") == first
