import json

import pytest

from gpfkit.cli import main

CHAIN = """
ring R = QQ[x,y];
prime p = (x, y);
prime q = (x);
submodule N in R = (x^2, x*y);
gpf N in R;
check-iff p * q in R;
"""

TWISTED = """
ring R = QQ[x,y,z] / (x*y - z^2, x^2 - y*z);
prime p = (x, z);
prime m = (x, y, z);
prime a = (x, y);
prime b = (y, z);
candidates = { p, m, a, b };
check-iff p^2 in R;
"""


def _run(tmp_path, text, *flags, name="script.gpf"):
    path = tmp_path / name
    path.write_text(text)
    return main([str(path), *flags])


def test_forward_factorization(tmp_path, capsys):
    code = _run(tmp_path, CHAIN)
    out = capsys.readouterr().out
    assert code == 0
    assert "(x) * (x, y)" in out
    assert "verdict" in out


def test_json_stream_is_deterministic(tmp_path, capsys):
    code = _run(tmp_path, CHAIN, "--json")
    first = capsys.readouterr().out
    assert code == 0
    code = _run(tmp_path, CHAIN, "--json")
    second = capsys.readouterr().out
    assert code == 0
    assert first == second
    lines = [json.loads(line) for line in first.strip().splitlines()]
    assert [obj["command"] for obj in lines] == ["gpf", "check-iff"]
    for obj in lines:
        assert obj["millis"] == 0
        assert set(obj) >= {
            "command",
            "inputs",
            "result",
            "attestations",
            "verification",
            "millis",
        }
    assert lines[0]["result"]["factorization"] == "(x) * (x, y)"
    assert lines[1]["result"]["verdict"] is True


def test_timings_flag_fills_millis(tmp_path, capsys):
    code = _run(tmp_path, CHAIN, "--json", "--timings")
    out = capsys.readouterr().out
    assert code == 0
    objs = [json.loads(line) for line in out.strip().splitlines()]
    assert all(isinstance(o["millis"], int) for o in objs)


def test_false_verdict_still_exits_zero(tmp_path, capsys):
    code = _run(tmp_path, TWISTED, "--json")
    out = capsys.readouterr().out
    assert code == 0
    obj = json.loads(out.strip().splitlines()[-1])
    assert obj["result"]["verdict"] is False
    assert obj["result"]["failed_index"] == 1


def test_parse_error_exit_one(tmp_path, capsys):
    code = _run(tmp_path, "ring R = QQ[x,y];\nconstruct p^0 in R;")
    err = capsys.readouterr().err
    assert code == 1
    assert "line 2" in err
    assert "exponent" in err


def test_unknown_name_exit_one(tmp_path, capsys):
    code = _run(tmp_path, "ring R = QQ[x,y];\ngpf N in R;")
    assert code == 1


def test_verification_failure_exit_two(tmp_path, capsys):
    script = "ring R = QQ[x,y];\nmodule M = free(1);\ngpf M in M;"
    code = _run(tmp_path, script)
    err = capsys.readouterr().err
    assert code == 2
    assert "proper submodule" in err


def test_construct_failure_exit_two(tmp_path, capsys):
    script = TWISTED.replace("check-iff p^2 in R;", "construct p^2 in R;")
    code = _run(tmp_path, script)
    err = capsys.readouterr().err
    assert code == 2
    assert "support condition" in err


def test_missing_registry_exit_three(tmp_path, capsys):
    script = "\n".join(
        line
        for line in TWISTED.strip().splitlines()
        if not line.startswith("candidates")
    )
    code = _run(tmp_path, script)
    err = capsys.readouterr().err
    assert code == 3
    assert "candidate registry" in err


def test_field_override(tmp_path, capsys):
    script = "ring R = QQ[x,y];\nsubmodule N in R = (x^2, x*y);\ngpf N in R;"
    code = _run(tmp_path, script, "--field", "Fp:5", "--json")
    out = capsys.readouterr().out
    assert code == 0
    obj = json.loads(out.strip().splitlines()[0])
    assert obj["result"]["factorization"] == "(x) * (x, y)"


def test_bad_field_flag(tmp_path, capsys):
    code = _run(tmp_path, "ring R = QQ[x];", "--field", "F4")
    assert code == 1


def test_oracle_battery(capsys):
    code = main(["--oracle", "--json"])
    out = capsys.readouterr().out
    assert code == 0
    obj = json.loads(out)
    assert obj["ok"] is True


def test_missing_script_is_usage_error(capsys):
    code = main([])
    assert code == 1


def test_tie_break_flag(tmp_path, capsys):
    script = "ring R = QQ[x,y];\nsubmodule N in R = (x*y);\nfiltration N in R;"
    code = _run(tmp_path, script, "--json", "--tie-break", "revlex")
    out = capsys.readouterr().out
    assert code == 0
    obj = json.loads(out.strip().splitlines()[0])
    steps = obj["result"]["steps"]
    assert [s["prime"] for s in steps] == ["(y)", "(x)"]
    code = _run(tmp_path, script, "--json", "--tie-break", "lex")
    out = capsys.readouterr().out
    obj = json.loads(out.strip().splitlines()[0])
    assert [s["prime"] for s in obj["result"]["steps"]] == ["(x)", "(y)"]
