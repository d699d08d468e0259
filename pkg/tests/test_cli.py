import json

import pytest

from twokgen.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_text_and_json(capsys):
    code, out, _ = run(capsys, "classify", "--field", "7", "--k", "3", "--r", "0,1,0,1")
    assert code == 0 and "Exceptional(alt5: Alt(5))" in out
    code, out, _ = run(capsys, "classify", "--field", "7", "--k", "3", "--json")
    assert code == 0 and json.loads(out)["label"] == "FullGroup(SL4)"


def test_sweep_json_lines_and_summary(capsys):
    code, out, _ = run(capsys, "sweep", "--field", "3", "--k", "3", "--constraint", "r2=0", "--json")
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert code == 0
    assert lines[-1] == {"summary": {"FullGroup": 2}, "records": 2}
    assert [r["params"]["r"] for r in lines[:-1]] == [["0", "0", "0", "1"], ["0", "0", "0", "-1"]]


def test_order_reports_projective_data(capsys):
    code, out, _ = run(capsys, "order", "--field", "3", "--k", "3", "--target", "SL4")
    data = json.loads(out)
    assert code == 0
    assert data["order"] == 12130560 and data["scalar_order"] == 2 and data["projective_order"] == 6065280
    assert data["verdict"]["result"] == "full"


def test_forms_scott_identify(capsys):
    code, out, _ = run(capsys, "forms", "--field", "7", "--k", "3", "--d", "-1", "--r", "0,-3,0,3")
    assert code == 0 and json.loads(out)["bilinear"]["forms"][0]["kind"] == "skew"
    code, out, _ = run(capsys, "scott", "--field", "5", "--k", "3")
    assert code == 0 and "sum=18" in out
    code, out, _ = run(capsys, "identify", "--field", "7", "--k", "3", "--r", "0,1,0,1", "--json")
    assert code == 0 and json.loads(out)["name"] == "Alt(5)"


def test_verify_pass_and_usage_errors(capsys):
    code, out, _ = run(capsys, "verify", "nr-iii")
    assert code == 0 and "[PASS]" in out and "FAIL" not in out
    assert run(capsys, "verify", "no-such-suite")[0] == 2
    assert run(capsys, "classify", "--field", "6", "--k", "3")[0] == 2
    assert run(capsys, "classify", "--field", "3^7", "--k", "3")[0] == 2
    assert run(capsys, "classify", "--field", "7", "--k", "5")[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_verify_failure_exit_code(capsys, monkeypatch):
    from twokgen import cli, suites

    def failing():
        rep = suites.SuiteReport("fake")
        rep.add("always fails", False)
        return rep

    monkeypatch.setitem(suites.SUITES, "fake", failing)
    code, out, _ = run(capsys, "verify", "fake")
    assert code == 1 and "[FAIL]" in out
    assert cli.main(["verify", "--json", "nr-iii"]) == 0


def test_reproduce_table(capsys):
    code, out, _ = run(capsys, "reproduce-table", "tuples-48-54")
    assert code == 0 and "exactly 48 tuples" in out and "exactly 54 tuples" in out


@pytest.mark.parametrize("flag", ["--help"])
def test_help_exits_zero(capsys, flag):
    assert run(capsys, flag)[0] == 0
