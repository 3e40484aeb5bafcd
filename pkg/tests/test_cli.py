import json
import subprocess
import sys

import pytest

from andreadakis import harness
from andreadakis.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_gamma_degree(capsys):
    assert run(capsys, "gamma-degree", "--n", "2", "--max-degree", "5", "--format", "json",
               "x1 x2 x1^-1 x2^-1") == (0, '{"degree": 2}\n')
    assert run(capsys, "gamma-degree", "--n", "2", "--max-degree", "5", "1") == (0, "inf\n")
    code, out = run(capsys, "gamma-degree", "--n", "2", "--max-degree", "2", "--format", "json",
                    "x1 x2 x1^-1 x2^-1 x1 x2 x1 x2^-1 x1^-2")
    assert code == 0 and json.loads(out) == {"degree_at_least": 3}


def test_identity_degree_json(capsys):
    code, out = run(capsys, "gamma-degree", "--n", "3", "--max-degree", "4", "--format", "json", "")
    assert code == 0 and json.loads(out) == {"degree": None, "infinite": True}


def test_aut_commands(capsys):
    images = ["--n", "2", "--images", "x1;x1^-1 x2 x1"]
    assert run(capsys, "aut", "a-degree", *images, "--max-degree", "4") == (0, "1\n")
    assert run(capsys, "aut", "g-degree-triangular", *images, "--max-degree", "4") == (0, "1\n")
    code, out = run(capsys, "aut", "decompose", *images, "--format", "json")
    assert code == 0 and json.loads(out)["ia_word"] == "K(2,1)^-1"


def test_braid_commands(capsys):
    code, out = run(capsys, "braid", "comb", "--n", "3", "A(1,3) A(1,2)")
    assert code == 0
    assert out.splitlines() == ["beta_2 = A(1,2)", "beta_3 = A(1,3) A(2,3) A(1,3) A(2,3)^-1 A(1,3)^-1"]
    code, out = run(capsys, "braid", "degree", "--n", "3", "--max-degree", "5", "--format", "json",
                    "A(1,3) A(2,3) A(1,3)^-1 A(2,3)^-1")
    assert code == 0
    assert json.loads(out) == {"gamma_degree": "2", "andreadakis_degree": "2", "verdict": "EQUAL"}


def test_lie_and_dk_commands(capsys):
    assert run(capsys, "lie", "dim", "--n", "2", "--k", "5") == (0, "6\n")
    assert run(capsys, "dk", "dim", "--n", "4", "--k", "3") == (0, "10\n")
    assert run(capsys, "lie", "bracket", "--n", "2", "x1", "x2") == (0, "[x1,x2]\n")
    code, out = run(capsys, "dk", "bracket", "--n", "3", "--format", "json", "t(1,3)", "t(2,3)")
    assert code == 0 and json.loads(out) == {"bracket": "[t(1,3),t(2,3)]"}


def test_tables(capsys):
    code, out = run(capsys, "tables", "--n-max", "3", "--k-max", "4")
    assert code == 0 and "Witt dimensions" in out


def test_verify_and_replay(capsys):
    code, out = run(capsys, "verify", "--target", "braid", "--n", "3", "--samples", "4", "--format", "json")
    assert code == 0
    report = json.loads(out)
    assert report["summary"]["verdict"] == "PASS" and "wall_time_s" not in report
    rec = report["records"][2]
    code, out = run(capsys, "verify", "--target", "braid", "--n", "3", "--format", "json",
                    "--replay-index", "2", "--replay-seed", str(rec["replay_seed"]))
    assert code == 0 and json.loads(out) == rec
    code, out = run(capsys, "verify", "--target", "dk", "--n", "3", "--samples", "2", "--timing", "--format", "json")
    assert code == 0 and "wall_time_s" in json.loads(out)


def test_verify_exit_one_on_failure(capsys, monkeypatch):
    monkeypatch.setitem(harness._TARGET_FUNCS, "triangular",
                        lambda cfg, rng: harness._record("forced", "1", "2", harness.FAIL))
    code, out = run(capsys, "verify", "--target", "triangular", "--n", "2", "--samples", "2")
    assert code == 1 and "verdict=FAIL" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["gamma-degree", "--n", "2", "--max-degree", "5", "x3"],
        ["gamma-degree", "--n", "2", "--max-degree", "5", "x1x2"],
        ["aut", "a-degree", "--n", "2", "--max-degree", "4", "--images", "x2;x1"],
        ["braid", "comb", "--n", "3", "A(1,4)"],
        ["verify", "--target", "braid", "--n", "1"],
        ["verify", "--target", "braid", "--n", "3", "--samples", "0"],
        ["dk", "bracket", "--n", "3", "t(1,3", "t(2,3)"],
    ],
)
def test_bad_input_exits_two(capsys, argv):
    assert main(argv) == 2


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--target", "bogus", "--n", "3"])
    assert exc.value.code == 2


def test_console_entry_point(monkeypatch):
    monkeypatch.setenv(harness.THREADS_ENV, "2")
    out = subprocess.run(
        [sys.executable, "-m", "andreadakis.cli", "verify", "--target", "mccool", "--n", "3", "--samples", "6"],
        capture_output=True, text=True, check=False,
    )
    assert out.returncode == 0, out.stderr
    assert "verdict=PASS" in out.stdout
