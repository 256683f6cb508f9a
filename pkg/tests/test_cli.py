import io
import json

import pytest

from pkpoly import cli, corpus


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_compute_text_and_json():
    code, out, _ = run("compute", "corpus:right-trefoil")
    assert code == 0
    assert out.splitlines() == ["poly 0 -4 4", "colorable_states 4", "census 2 4"]
    code, out, _ = run("compute", "--json", "corpus:left-trefoil")
    data = json.loads(out)
    assert data["polynomial"] == "poly 0 2 -3 1" and data["colorable_states"] == 1


def test_compute_from_files(tmp_path):
    lkd = tmp_path / "t.lkd"
    lkd.write_text(corpus.get("borromean").payload)
    code, out, _ = run("compute", str(lkd))
    assert code == 0 and out.startswith("poly 0 -4 8 -5 1")
    rsg = tmp_path / "k4.rsg"
    rsg.write_text(corpus.get("graph-k4").payload)
    code, out2, _ = run("compute", str(rsg))
    assert out2.splitlines()[0] == out.splitlines()[0]


def test_oracle_and_aigner():
    assert run("oracle", "corpus:left-trefoil", "--n", "3")[1] == "6\n"
    assert run("oracle", "corpus:petersen", "--n", "3")[1] == "0\n"
    code, out, _ = run("aigner", "corpus:graph-k4")
    assert code == 0 and out == "poly 0 -4 8 -5 1\n"
    code, _, err = run("aigner", "corpus:right-trefoil")
    assert code == 2 and "RSG" in err


def test_analyze_reports_fields():
    code, out, _ = run("analyze", "--json", "corpus:nonalternating-odd")
    data = json.loads(out)
    assert code == 0 and data["a1"] == 5 and data["a1_even"] is False
    assert data["context"]["plane"] is True


def test_reduce_outputs_lkd():
    code, out, _ = run("reduce", "corpus:torus-2-4")
    assert code == 0
    assert out.splitlines()[0] == "# r 3"
    assert "lkd 1 0" in out
    data = json.loads(run("reduce", "--json", "corpus:left-torus-2-4")[1])
    assert [s["kind"] for s in data["steps"]] == ["bigon", "bigon"]


def test_export_dot():
    code, out, _ = run("export", "--dot", "tait", "corpus:borromean")
    assert code == 0 and out.startswith("graph tait {")
    code, out, _ = run("export", "--dot", "component", "--state", "0", "corpus:right-trefoil")
    assert code == 0 and out.startswith("graph components {")
    assert run("export", "--dot", "component", "--state", "7", "corpus:right-trefoil")[0] == 2
    assert run("export", "--dot", "component", "--state", "8", "corpus:right-trefoil")[0] == 2


def test_corpus_commands():
    code, out, _ = run("corpus", "list")
    assert code == 0 and len(out.splitlines()) == len(corpus.entries())
    code, out, _ = run("corpus", "show", "right-trefoil")
    assert "# expect P(3) 24" in out and "lkd 3 0" in out
    assert run("corpus", "show", "nope")[0] == 2
    assert run("corpus", "show")[0] == 2


def test_verify_custom_corpus(tmp_path):
    f = tmp_path / "c.txt"
    payload = corpus.get("right-trefoil").payload
    f.write_text(f"entry rt diagram\nexpect polynomial poly 0 -4 4\nexpect P(3) 24\n{payload}end\n")
    code, out, _ = run("verify", "--suite", "corpus", "--corpus-file", str(f))
    assert code == 0
    assert "PASS corpus rt:polynomial" in out and out.rstrip().endswith("2 checks, 0 failed")
    f.write_text(f"entry rt diagram\nexpect P(3) 25\n{payload}end\n")
    assert run("verify", "--suite", "corpus", "--corpus-file", str(f))[0] == 1


def test_verify_json_and_bad_suite(tmp_path):
    f = tmp_path / "empty.txt"
    f.write_text("")
    code, out, _ = run("verify", "--json", "--corpus-file", str(f))
    assert code == 0 and json.loads(out) == {"checks": [], "failed": 0, "total": 0}
    assert run("verify", "--suite", "bogus")[0] == 2


def test_corpus_file_errors(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("entry x widget\nend\n")
    code, _, err = run("verify", "--corpus-file", str(f))
    assert code == 2 and "line 1" in err
    f.write_text("entry x diagram\nlkd 0 1\n")
    assert run("verify", "--corpus-file", str(f))[0] == 2


def test_input_errors_exit_2(tmp_path):
    f = tmp_path / "bad.lkd"
    f.write_text("lkd 1 0\nx 0 1 2 3 44\n")
    code, out, err = run("compute", str(f))
    assert code == 2 and out == ""
    assert "line 2, column 11" in err
    assert run("compute", str(tmp_path / "missing.lkd"))[0] == 2
    assert run("compute", "corpus:nope")[0] == 2
    assert run("nonsense")[0] == 2
    assert run("compute", "--threads", "0", "corpus:theta-1")[0] == 2


def test_budget_exhaustion_exit_3():
    code, out, err = run("compute", "--budget-states", "2", "corpus:right-trefoil")
    assert code == 3 and out == ""
    assert "--budget-states" in err
    code, _, err = run("oracle", "--budget-oracle", "5", "--n", "3", "corpus:borromean")
    assert code == 3 and "--budget-oracle" in err


def test_help_exits_cleanly(capsys):
    assert cli.run(["--help"]) == 0
    assert "compute" in capsys.readouterr().out
