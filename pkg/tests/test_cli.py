import json
import subprocess
import sys

import pytest

from tensorrest.catfile import read_file
from tensorrest.cli import main


@pytest.fixture
def files(tmp_path):
    c, s, p = (str(tmp_path / n) for n in ("c.cat", "s.cat", "p.cat"))
    assert main(["example", "semilattice", "--param", "chain3", "-o", c]) == 0
    assert main(["sconstruct", c, "-o", s]) == 0
    assert main(["example", "finpar", "--param", "2", "-o", p]) == 0
    return c, s, p


def test_three_flows(files, capsys):
    c, s, p = files
    capsys.readouterr()
    assert main(["check", c, "--suite", "all"]) == 0
    assert main(["check", s, "--suite", "TR"]) == 0
    capsys.readouterr()
    assert main(["check", p, "--suite", "TR"]) == 1
    out = capsys.readouterr().out
    assert "status: fail" in out and "violation: TR3" in out


def test_reports_are_byte_identical(files, capsys):
    _, s, p = files
    capsys.readouterr()
    for args in (["check", s], ["check", p, "--suite", "TR", "--json"], ["subunits", s]):
        main(args)
        first = capsys.readouterr().out
        main(args)
        assert capsys.readouterr().out == first


def test_json_report(files, capsys):
    _, _, p = files
    capsys.readouterr()
    assert main(["check", p, "--suite", "CR", "--json"]) == 1
    data = json.loads(capsys.readouterr().out)
    (suite,) = data["suites"]
    assert suite["status"] == "fail"
    assert {v["axiom"] for v in suite["violations"]} == {"CR4"}
    assert "seconds" not in suite


def test_timing_is_opt_in(files, capsys):
    c, _, _ = files
    capsys.readouterr()
    main(["check", c, "--suite", "category", "--timing"])
    assert "seconds:" in capsys.readouterr().out


def test_iso(files, tmp_path, capsys):
    c, s, _ = files
    d = str(tmp_path / "d.cat")
    assert main(["example", "depressing", "--param", "chain3", "-o", d]) == 0
    capsys.readouterr()
    assert main(["iso", s, d, "--preserve", "monoidal,restriction"]) == 0
    assert "FOUND" in capsys.readouterr().out
    assert main(["iso", c, d]) == 1
    assert "NONE" in capsys.readouterr().out


def test_total_and_roundtrip(files, tmp_path, capsys):
    c, s, p = files
    t = str(tmp_path / "t.cat")
    assert main(["total", s, "-o", t]) == 0
    assert read_file(t).category.n_morphisms == 6
    assert main(["roundtrip", c, "--direction", "TS"]) == 0
    assert main(["roundtrip", s, "--direction", "ST"]) == 0
    assert main(["roundtrip", p, "--direction", "ST"]) == 1


def test_subunits_listing(files, capsys):
    c, _, _ = files
    capsys.readouterr()
    assert main(["subunits", c]) == 0
    assert capsys.readouterr().out.count("subunit") >= 3


def test_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cat"
    bad.write_text("format 1\nobject a\nobject a\n")
    assert main(["check", str(bad)]) == 2
    assert "line 3, column 8" in capsys.readouterr().err
    assert main(["check", str(tmp_path / "missing.cat")]) == 2
    assert main(["example", "finpar", "--param", "zero"]) == 2
    assert main(["example", "finset", "--param", "0"]) == 2
    assert main(["frobnicate"]) == 2


def test_module_entry_point(tmp_path):
    out = tmp_path / "z.cat"
    run = subprocess.run([sys.executable, "-m", "tensorrest", "example", "cyclic", "--param", "2",
                          "-o", str(out)], capture_output=True, text=True)
    assert run.returncode == 0
    run = subprocess.run([sys.executable, "-m", "tensorrest", "check", str(out)],
                         capture_output=True, text=True)
    assert run.returncode == 0, run.stdout + run.stderr
