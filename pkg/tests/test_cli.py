import json

import pytest

from tcohom.cli import main


def _write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.fixture
def files(tmp_path):
    return {
        "z2": _write(tmp_path, "z2.json", {"kind": "ternary", "size": 2, "table": [0, 1, 1, 0, 1, 0, 0, 1]}),
        "z3sum": _write(
            tmp_path,
            "z3sum.json",
            {"kind": "ternary", "size": 3, "table": [(x + y + z) % 3 for x in range(3) for y in range(3) for z in range(3)]},
        ),
        "bad": str(tmp_path / "bad.json"),
    }


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


def test_check_pass_and_fail(capsys, files):
    code, rep = _run(capsys, "check", files["z2"])
    assert code == 0 and rep["status"] == "pass"
    code, rep = _run(capsys, "check", files["z3sum"], "--axioms", "heap")
    assert code == 1
    assert rep["results"][0]["witness"] == [1, 0]


def test_malformed_json_is_exit_2(capsys, files):
    with open(files["bad"], "w") as fh:
        fh.write('{"kind": "ternary",\n "size": }')
    code = main(["check", files["bad"]])
    err = capsys.readouterr().err
    assert code == 2
    assert "bad.json:2:10:" in err


def test_usage_error_is_exit_2(capsys, files):
    assert main(["homology", files["z2"], "--dim", "7"]) == 2
    assert main(["enumerate", "--order", "9"]) == 2
    assert main(["no-such-command"]) == 2
    capsys.readouterr()


def test_cohomology_report(capsys, files):
    code, rep = _run(capsys, "cohomology", files["z2"], "--theory", "heap", "--dim", "2", "--coefficients", "2")
    assert code == 0
    assert rep["results"][0]["actual"] == "Z_2"
    code, rep = _run(
        capsys, "cohomology", files["z2"], "--theory", "pa", "--dim", "2", "--coefficients", "2", "--expect", "Z_2"
    )
    assert code == 1


def test_heap_theory_rejects_non_heap(capsys, files):
    code, rep = _run(capsys, "cohomology", files["z3sum"], "--theory", "heap", "--dim", "2", "--coefficients", "3")
    assert code == 1
    assert rep["results"][0]["status"] == "fail"


def test_enumerate(capsys):
    code, rep = _run(capsys, "enumerate", "--order", "4")
    assert code == 0
    assert rep["results"][0]["actual"] == 4


def test_reports_are_deterministic(capsys, files):
    argv = ("cohomology", files["z2"], "--theory", "sd", "--dim", "2", "--coefficients", "2")
    _, a = _run(capsys, *argv)
    _, b = _run(capsys, *argv)
    a.pop("elapsed_ms"), b.pop("elapsed_ms")
    assert a == b


def test_suite_list(capsys):
    code, rep = _run(capsys, "paper-suite", "--list")
    assert code == 0
    assert len(rep["results"]) == 12


def test_pretty_output(capsys, files):
    code, out = _run(capsys, "check", files["z2"], "--pretty")
    assert code == 0
    assert isinstance(out, str) and "pass" in out.lower()


def test_ses_transfer(capsys):
    code, rep = _run(capsys, "transfer", "--map", "ses", "--n", "3")
    assert code == 0
    support = {tuple(k): v for k, v in rep["results"][0]["support"]}
    assert support[(2, 0, 2)] == [1]
