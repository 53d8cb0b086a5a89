import json
import os
import subprocess
import sys

import pytest

from mstruct.cli import EXIT_BOUND, EXIT_FAIL, EXIT_OK, EXIT_PARSE, run


def _run(argv, capsys):
    code, text = run(argv)
    capsys.readouterr()
    return code, (json.loads(text) if text and text.lstrip().startswith("{") else text)


def test_homology_table(capsys):
    code, rep = _run(["homology", "--fixture", "rp2"], capsys)
    assert code == EXIT_OK
    assert rep["facts"]["homology"] == {"0": "Z", "1": "Z/2", "2": "0"}


def test_text_format(capsys):
    code, text = _run(["homology", "--fixture", "moore(3,2)", "--format", "text"], capsys)
    assert code == EXIT_OK and "Z/3" in text and text.startswith("homology of moore(3,2): PASS")


def test_example_b_is_coherent(capsys):
    code, rep = _run(["coherence", "--fixture", "example-B", "--rank", "2"], capsys)
    assert code == EXIT_OK and rep["passed"]


def test_trivial_operad(capsys):
    code, rep = _run(["check-operad", "--which", "trivial", "--rank", "4"], capsys)
    assert code == EXIT_OK and rep["passed"]


@pytest.mark.parametrize("argv", [
    ["mstructure", "--fixture", "s2-min"],
    ["steenrod", "--fixture", "rp2"],
    ["cobar", "--fixture", "s3-min", "--degree", "4"],
    ["twisted", "--fixture", "s2-min", "--degree", "4"],
    ["kinvariant", "--fixture", "double-s2"],
    ["zigzag-lift", "--fixture", "bubbles-right"],
    ["fixtures"],
])
def test_passing_commands(argv, capsys):
    code, rep = _run(argv, capsys)
    assert code == EXIT_OK, rep


def test_failing_checks_exit_one(capsys):
    code, rep = _run(["kinvariant", "--fixture", "point-s2", "--degree", "3"], capsys)
    assert code == EXIT_FAIL
    assert rep["checks"]["cone_acyclic_below_k"]["witness"]


@pytest.mark.parametrize("argv", [
    ["homology", "--fixture", "no-such-space"],
    ["homology"],
    ["nonsense-verb"],
    ["homology", "--fixture", "rp2", "--rank", "0"],
    ["cobar", "--fixture", "s2"],
    ["steenrod", "--fixture", "example-B"],
    ["zigzag-lift", "--fixture", "random-x"],
])
def test_parse_errors_exit_two(argv, capsys):
    if argv == ["nonsense-verb"]:
        with pytest.raises(SystemExit) as exc:
            run(argv)
        assert exc.value.code == EXIT_PARSE
        return
    code, _ = _run(argv, capsys)
    assert code == EXIT_PARSE


def test_bound_exhaustion_exits_three(capsys):
    code, _ = _run(["mstructure", "--fixture", "rp2", "--rank", "9"], capsys)
    assert code == EXIT_BOUND
    code, _ = _run(["mstructure", "--fixture", "example-B", "--rank", "4"], capsys)
    assert code == EXIT_BOUND


def test_input_files(tmp_path, capsys):
    from mstruct.simpchain import fixture
    path = tmp_path / "rp2.json"
    path.write_text(json.dumps(fixture("rp2").to_json()))
    code, rep = _run(["homology", "--input", str(path)], capsys)
    assert code == EXIT_OK and rep["facts"]["homology"]["1"] == "Z/2"
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert _run(["homology", "--input", str(bad)], capsys)[0] == EXIT_PARSE


def test_threads_variable(monkeypatch, capsys):
    monkeypatch.setenv("MSTRUCT_THREADS", "zero")
    assert _run(["fixtures"], capsys)[0] == EXIT_PARSE
    monkeypatch.setenv("MSTRUCT_THREADS", "2")
    assert _run(["fixtures"], capsys)[0] == EXIT_OK


def test_out_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _ = _run(["homology", "--fixture", "torus", "--out", str(out)], capsys)
    assert code == EXIT_OK and json.loads(out.read_text())["facts"]["homology"]["1"] == "Z^2"


@pytest.mark.parametrize("argv", [
    ["steenrod", "--fixture", "torus"],
    ["zigzag-lift", "--fixture", "random-11"],
    ["mstructure", "--fixture", "rp2", "--rank", "2", "--degree", "2"],
])
def test_reports_are_byte_identical_across_processes(argv, tmp_path):
    outs = []
    for seed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        path = tmp_path / f"{seed}.json"
        subprocess.run([sys.executable, "-m", "mstruct.cli", *argv, "--out", str(path)], env=env, check=False)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
