import io
import json
import sys
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from logcave import cli
from logcave.cli import EXIT_IO, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE, SequenceParseError, parse_sequence, render, run

F = Fraction


def invoke(*argv):
    buf = io.StringIO()
    status = run(list(argv), stdout=buf)
    return status, buf.getvalue()


def invoke_json(*argv):
    status, text = invoke(*argv)
    assert status == EXIT_OK, text
    return json.loads(text)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1,7,21,35,35,21,7,1", (1, 7, 21, 35, 35, 21, 7, 1)),
        ("--even 7,21,35", (1, 7, 21, 35, 35, 21, 7, 1)),
        ("--odd 8/5", (1, F(8, 5), 1)),
        ("1, 8/5, 1", (1, F(8, 5), 1)),
        ("  1 2\t1\n", (1, 2, 1)),
        ("0.5,-3,+2", (F(1, 2), -3, 2)),
    ],
)
def test_parse_sequence(text, expected):
    assert parse_sequence(text) == tuple(F(v) for v in expected)


@pytest.mark.parametrize(
    "text, position",
    [
        ("1,x,1", 2),
        ("1, 2/0", 3),
        ("", 0),
        ("1,,2,3/", 5),
        ("--even 7,2a", 9),
    ],
)
def test_parse_errors_report_position(text, position):
    with pytest.raises(SequenceParseError) as exc:
        parse_sequence(text)
    assert exc.value.position == position
    assert f"position {position}" in str(exc.value)


def test_parse_sequence_half_argument():
    assert parse_sequence("3/2,3/2", "even") == (1, F(3, 2), F(3, 2), F(3, 2), F(3, 2), 1)
    with pytest.raises(SequenceParseError):
        parse_sequence("--odd 2", "odd")


rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**6)


@given(st.lists(rationals, min_size=1, max_size=12))
def test_render_parse_round_trip(values):
    s = tuple(values)
    assert parse_sequence(render(s)) == s


def test_classify_examples():
    out = invoke_json("classify", "1,2,1")
    assert (out["verdict"], out["iterate"]) == ("certified", 0)
    assert "reason" not in out
    assert out["input_normalized"] == {"parity": "odd", "half": ["2/1"], "scale": "1/1"}
    out = invoke_json("classify", "2,4,2")
    assert out["input_normalized"]["scale"] == "2/1"
    out = invoke_json("classify", "--even", "7,21,35")
    assert (out["verdict"], out["iterate"]) == ("certified", 1)
    out = invoke_json("classify", "1,1", "--max-iter", "4")
    assert out == {"verdict": "unknown", "iterate": 4, "reason": "max-iterations", "input_normalized": None}


def test_classify_bit_budget_flag_and_env(monkeypatch):
    out = invoke_json("classify", "--even", "3/2,3/2", "--bit-budget", "200")
    assert out["reason"] == "bit-budget"
    monkeypatch.setenv("LOGCAVE_BIT_BUDGET", "200")
    assert invoke_json("classify", "--even", "3/2,3/2")["reason"] == "bit-budget"


def test_strict_exit_code():
    status, text = invoke("classify", "--strict", "1,1", "--max-iter", "2")
    assert status == EXIT_UNKNOWN
    assert json.loads(text)["verdict"] == "unknown"
    status, _ = invoke("classify", "--strict", "1,2,1")
    assert status == EXIT_OK


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "1,x,1"],
        ["classify"],
        ["frobnicate"],
        ["classify", "--even", "1,2", "--odd", "1,2"],
        ["iterate", "1,2,1", "--steps", "-1"],
        ["region", "1,2,3"],
        ["region", "--even", "0,2"],
        ["witness", "--n", "1", "--parity", "even", "--C", "7/10"],
        ["witness", "--n", "1", "--parity", "even", "--a", "5"],
        ["sweep", "--parity", "even", "--n", "2"],
        ["sweep", "--parity", "even", "--n", "2", "--range", "1:2", "--range", "1:2", "--range", "1:2", "--format", "pgm"],
        ["surface", "--j", "3", "--parity", "even", "--n", "2"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    status, text = invoke(*argv)
    assert status == EXIT_USAGE
    assert text == ""
    assert capsys.readouterr().err


def test_iterate_text_and_json():
    status, text = invoke("iterate", "--even", "7,21,35", "-k", "1")
    assert status == EXIT_OK
    assert text == "0\t1,7,21,35,35,21,7,1\n1\t1,28,196,490,490,196,28,1\n"
    out = invoke_json("iterate", "1,8/5,1", "--steps", "2", "--format", "json")
    assert out["iterates"] == [["1/1", "8/5", "1/1"], ["1/1", "39/25", "1/1"], ["1/1", "896/625", "1/1"]]


def test_region_examples():
    out = invoke_json("region", "--even", "7,21,35")
    assert out["in_region"] is False
    assert out["per_surface"][0] == "Below"
    assert "H0" in out["failed_conditions"]
    out = invoke_json("region", "--even", "28,196,490")
    assert out == {
        "parity": "even",
        "coords": ["28/1", "196/1", "490/1"],
        "in_region": True,
        "per_surface": ["Above", "Above", "Above"],
        "failed_conditions": [],
    }
    # full sequences are normalized before the test
    assert invoke_json("region", "2,30,100,100,30,2")["coords"] == ["15/1", "50/1"]


def test_witness_defaults():
    out = invoke_json("witness", "--n", "1", "--parity", "even")
    # a = 3 * (3/5)**-2 = 25/3, so s = (5a, (3/5)**2 * a**2 * 10)
    assert (out["a"], out["half"]) == ("25/3", ["125/3", "250/1"])
    assert out["in_region"] and out["kernel_in_region"]
    out = invoke_json("witness", "--n", "1", "--parity", "even", "--a", "10")
    assert out["half"] == ["50/1", "360/1"]
    out = invoke_json("witness", "--n", "2", "--parity", "odd")
    assert out["a"] == "625/27"
    assert out["base"] == ["6/1", "15/1", "20/1"]


def test_witness_custom_base():
    out = invoke_json("witness", "--n", "1", "--parity", "odd", "--base", "1,1", "--a", "5")
    assert out["half"] == ["5/1", "9/1"]


def test_sweep_csv_and_pgm():
    status, text = invoke("sweep", "--parity", "even", "--range", "1:3", "--range", "1:3", "--step", "1", "--max-iter", "20")
    assert status == EXIT_OK
    lines = text.splitlines()
    assert lines[0] == "x0,x1,verdict,iterate"
    assert len(lines) == 10
    assert "1,2,refuted,0" in lines
    status, pgm = invoke("sweep", "--parity", "odd", "--n", "0", "--range", "1:2", "--step", "1/4", "--format", "pgm")
    assert status == EXIT_OK
    assert pgm.split()[:4] == ["P2", "5", "1", "255"]


def test_surface_csv():
    status, text = invoke(
        "surface", "--j", "2", "--parity", "even", "--n", "2", "--x-range", "2:2", "--x-steps", "1",
        "--d-range", "1:3/5:3/5", "--d-steps", "1", "--precision", "4",
    )
    assert status == EXIT_OK
    # (2, 2**1.6, 2 * 2**1.6)
    assert text == "param:x,param:d1,coord:0,coord:1,coord:2\n2.0000,0.6000,2.0000,3.0314,6.0629\n"


def test_stdin_input(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("1, 5, 10, 10, 5, 1\n"))
    out = invoke_json("classify", "-")
    assert (out["verdict"], out["iterate"]) == ("certified", 1)


def test_out_path(tmp_path):
    target = tmp_path / "cert.json"
    status, text = invoke("classify", "1,2,1", "--out", str(target))
    assert (status, text) == (EXIT_OK, "")
    assert json.loads(target.read_text())["verdict"] == "certified"


def test_out_path_io_error(tmp_path, capsys):
    target = tmp_path / "missing" / "cert.json"
    status, _ = invoke("classify", "1,2,1", "--out", str(target))
    assert status == EXIT_IO
    assert str(target) in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "--even", "7,21,35"],
        ["region", "--odd", "3,9"],
        ["witness", "--n", "3", "--parity", "even"],
        ["iterate", "1,8/5,1", "-k", "3", "--format", "json"],
        ["sweep", "--parity", "even", "--range", "1:4", "--range", "1:6", "--step", "1"],
        ["surface", "--j", "1", "--parity", "odd", "--n", "2", "--x-steps", "2", "--d-steps", "2"],
    ],
)
def test_repeat_invocations_are_byte_identical(argv):
    assert invoke(*argv) == invoke(*argv)


def test_main_exits_with_status():
    with pytest.raises(SystemExit) as exc:
        cli.main(["classify", "--strict", "1,1", "--max-iter", "0"])
    assert exc.value.code == EXIT_UNKNOWN
