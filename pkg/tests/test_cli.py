import json

import pytest

from semicomm.cli import main
from semicomm.table import load_sg


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_construct_and_classify(tmp_path, capsys):
    path = tmp_path / "b2.sg"
    code, out, _ = run(capsys, "construct", "brandt-b2", "-o", str(path))
    assert code == 0 and "order 5" in out
    assert load_sg(path).order == 5
    code, out, _ = run(capsys, "classify", str(path), "--json")
    rec = json.loads(out)
    assert code == 0 and rec["inverse"] is True and rec["separative"] is False
    code, out, _ = run(capsys, "classify", str(path))
    assert code == 0 and "regular=true" in out


def test_construct_json(capsys):
    code, out, _ = run(capsys, "construct", "cyclic", "3", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["table"] == [[0, 1, 2], [1, 2, 0], [2, 0, 1]]


def test_construct_wrong_arity(capsys):
    code, _, err = run(capsys, "construct", "cyclic")
    assert code == 2 and "parameter" in err


def test_bad_sg_is_usage_error(tmp_path, capsys):
    bad = tmp_path / "bad.sg"
    bad.write_text("n 2\n0 1\n1 0 0\n")
    code, out, err = run(capsys, "classify", str(bad))
    assert code == 2 and out == "" and err
    nonassoc = tmp_path / "na.sg"
    nonassoc.write_text("n 2\n1 0\n0 0\n")
    assert run(capsys, "decompose", str(nonassoc))[0] == 2
    assert run(capsys, "classify", str(tmp_path / "missing.sg"))[0] == 2


def test_decompose_output_dir(tmp_path, capsys):
    src = tmp_path / "b2.sg"
    run(capsys, "construct", "brandt-b2", "-o", str(src))
    out_dir = tmp_path / "dec"
    code, out, _ = run(capsys, "decompose", str(src), "-o", str(out_dir))
    assert code == 0 and "# wrote" in out
    assert any(p.name.endswith(".sg") for p in out_dir.iterdir())


def test_enumerate_count_only(capsys):
    assert run(capsys, "enumerate", "--order", "3", "--count-only") == (0, "113\n", "")
    assert run(capsys, "enumerate", "--order", "3", "--count-only", "--iso")[1] == "24\n"
    code, out, _ = run(capsys, "enumerate", "--order", "2", "--iso", "--json")
    assert code == 0 and len(out.splitlines()) == 5


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "main1", "--max-order", "3", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["verdict"] == "holds" and rec["models_checked"] == 122
    assert run(capsys, "verify", "--claim", "main1", "--p", "2", "--q", "4")[0] == 2


def test_audit_example_codes(capsys):
    assert run(capsys, "audit-example", "ex33")[0] == 0
    code, out, _ = run(capsys, "audit-example", "ex42")
    assert code == 3 and "hypothesis_never_satisfied" in out


def test_replay(tmp_path, capsys):
    code, out, _ = run(capsys, "replay", "proofs/lemma21.prf")
    assert code == 0 and "4/4 claims verified" in out
    broken = tmp_path / "broken.prf"
    broken.write_text("mode plain\nhyp c: x * y = y * x\nclaim a: x * y = y * x\n  rw L2R c at 1\nqed\n")
    code, out, _ = run(capsys, "replay", str(broken))
    assert code == 1 and "line 4" in out and "expected" in out
    code, out, _ = run(capsys, "replay", str(broken), "--json")
    rec = json.loads(out)
    assert rec["ok"] is False and rec["claims"][0]["steps"][0]["line"] == 4
    syntax = tmp_path / "syntax.prf"
    syntax.write_text("mode plain\nclaim a: x * * y = x\nqed\n")
    code, _, err = run(capsys, "replay", str(syntax))
    assert code == 2 and "line 2" in err
    assert run(capsys, "replay", "nowhere.prf")[0] == 2


def test_emit_prover9(capsys):
    code, out, _ = run(capsys, "emit-prover9", "--p", "2", "--q", "3")
    assert code == 0 and "(x * x) * (y * y) = (y * y) * (x * x)." in out
    assert run(capsys, "emit-prover9", "--p", "2", "--q", "4")[0] == 2


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys)[0] == 2
    assert run(capsys, "enumerate")[0] == 2
