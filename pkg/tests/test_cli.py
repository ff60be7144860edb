import json
import subprocess
import sys

import pytest

from oscomp.cli import main


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = main(list(argv))
        out = capsys.readouterr()
        return code, out.out, out.err

    return _run


@pytest.fixture
def w2_file(tmp_path, run):
    code, out, _ = run("family", "wn", "--n", "2")
    assert code == 0
    path = tmp_path / "w2.json"
    path.write_text(out)
    return str(path)


def test_member(run, w2_file):
    code, out, _ = run("member", "--model", w2_file, "--value", "7")
    assert code == 0 and json.loads(out) == {"member": True, "factorization": [1, 1]}


def test_order_table(run, w2_file):
    code, out, _ = run("order", "--model", w2_file, "--x", "4", "--y", "6", "--table")
    assert code == 0 and out.split() == ["4", "6", "False"]


def test_sdom(run, w2_file):
    code, out, _ = run("sdom", "--model", w2_file, "--x", "3", "--y", "4", "--kmax", "100")
    data = json.loads(out)
    assert code == 0 and data["certificate"]["k"] == 3
    code, out, _ = run("sdom", "--model", w2_file, "--x", "4", "--y", "3")
    assert json.loads(out)["state_criterion"]["max_value"] == "4/3"


def test_states(run, w2_file):
    code, out, _ = run("states", "--model", w2_file, "--y", "4")
    assert code == 0 and json.loads(out)["vertices"] == [["1/4"]]


def test_ncomp_exit_codes(run, w2_file):
    code, out, _ = run("ncomp", "--model", w2_file, "--n", "1", "--bound", "40")
    assert code == 1 and json.loads(out)["witness"]["ys"] == [4, 4]
    code, _, _ = run("ncomp", "--model", w2_file, "--n", "2", "--bound", "40")
    assert code == 0


def test_cfp_and_reduce(run, w2_file, tmp_path):
    inst = tmp_path / "inst.json"
    inst.write_text(json.dumps({"x_prime": 3, "m": 1, "x_seq": {"period": [3]}, "y_seq": {"period": [3]}}))
    code, out, _ = run("cfp", "--model", w2_file, "--instance", str(inst))
    assert code == 0 and json.loads(out)["k"] == 1
    code, out, _ = run("reduce", "omega-cfp", "--model", w2_file, "--instance", str(inst))
    data = json.loads(out)
    assert code == 0 and data["replayed"] and data["certificate"]["k"] == 2


def test_qcheck(run, w2_file):
    code, out, _ = run("qcheck", "--model", w2_file, "--mode", "QQ")
    assert code == 0 and json.loads(out)["status"] == "Holds"


def test_report_family(run):
    code, out, _ = run("report", "--family", "wn:1-2", "--checks", "n_comparison", "--n-max", "2")
    data = json.loads(out)
    assert code == 0 and [r["model_id"] for r in data] == ["W_1", "W_2"]


def test_report_is_byte_identical(run):
    args = ("report", "--family", "random:3", "--checks", "almost_unperforation,CFP", "--instances", "4")
    assert run(*args)[1] == run(*args)[1]


@pytest.mark.parametrize("argv", [
    ("member", "--model", "missing.json", "--value", "1"),
    ("report", "--family", "nonsense"),
    ("report", "--family", "wn:1", "--checks", "bogus"),
    ("frobnicate",),
])
def test_input_errors_exit_two(run, argv):
    code, _, _ = run(*argv)
    assert code == 2


def test_negative_value_is_an_input_error(run, w2_file):
    code, _, err = run("member", "--model", w2_file, "--value", "-1")
    assert code == 2 and "negative" in err


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "oscomp", "family", "zplus"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["generators"] == [1]
