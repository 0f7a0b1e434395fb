import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from multipath.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
H = str(FIXTURES / "h_graph.edges")
P4 = str(FIXTURES / "p4.edges")
LINE = str(FIXTURES / "line3_noncoherent.edges")
DUAL = str(FIXTURES / "dual_numbers.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip().startswith("{") else out), err


def test_homology_h_graph(capsys):
    code, out, _ = run(capsys, "homology", H, "--field", "q")
    assert code == 0
    assert out["betti"] == {"2": 2}
    assert out["dims"] == {"0": 1, "1": 5, "2": 6}


def test_homology_dual_numbers_file(capsys):
    code, out, _ = run(capsys, "homology", LINE, "--algebra", DUAL, "--field", "gf:3")
    assert code == 0
    assert out["betti"] == {"0": 2, "1": 2}


def test_output_is_deterministic(capsys):
    first = (main(["homology", H]), capsys.readouterr().out)
    second = (main(["homology", H]), capsys.readouterr().out)
    assert first == second
    assert "seconds" not in first[1]


def test_timing_flag(capsys):
    _, out, _ = run(capsys, "homology", H, "--timing")
    assert out["seconds"] >= 0


def test_table_format(capsys):
    code, out, _ = run(capsys, "homology", H, "--format", "table")
    assert code == 0
    assert isinstance(out, str) and "betti" in out


def test_emit_and_dump(tmp_path, capsys):
    dot, dump = tmp_path / "h.dot", tmp_path / "c.json"
    code, _, _ = run(capsys, "homology", H, "--emit-hasse", str(dot), "--dump-complex", str(dump))
    assert code == 0
    assert dot.read_text().startswith("digraph")
    assert json.loads(dump.read_text())["dims"] == {"0": 1, "1": 5, "2": 6}


def test_verify_signs_and_sign_iso(capsys):
    code, out, _ = run(capsys, "verify-signs", P4)
    assert code == 0 and out["valid"]
    code, out, _ = run(capsys, "sign-iso", P4)
    assert code == 0


def test_morse_default_and_file(tmp_path, capsys):
    code, out, _ = run(capsys, "morse", H)
    assert code == 0
    m = tmp_path / "m.txt"
    m.write_text("0 1\n2 6\n4 c\n8 9\n10 11\n")
    code, out, _ = run(capsys, "morse", H, "--matching", str(m))
    assert code == 0
    assert out["shortcut"] == {"2": 2}


def test_chromatic_commands(capsys):
    code, out, _ = run(capsys, "chromatic", P4, "--variant", "hat", "--unoriented", "--algebra", "K")
    assert code == 0
    code, out, _ = run(capsys, "compare-chromatic", "--family", "P", "--n", "3", "--algebra", "dual")
    assert code == 0 and out["isomorphisms_hold"]


def test_les_and_hochschild(capsys):
    code, out, _ = run(capsys, "check-les", H, "--algebra", "dual")
    assert code == 0
    code, out, _ = run(capsys, "hochschild", "--algebra", "dual", "--max-degree", "3")
    assert code == 0
    assert out["hh"] == {"0": 2, "1": 1, "2": 1, "3": 1}
    code, out, _ = run(capsys, "polygon-check", "--n", "3", "--field", "gf:2", "--algebra", "dual")
    assert code == 0


@pytest.mark.parametrize("argv", [
    ["homology", "/nonexistent.edges"],
    ["homology", H, "--field", "gf:4"],
    ["homology", H, "--algebra", "truncated:x"],
    ["homology", H, "--base-vertex", "9"],
    ["hochschild", "--algebra", "dual", "--max-degree", "9"],
])
def test_bad_input_exits_one(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err.startswith("multipath:")


def test_self_loop_file(tmp_path, capsys):
    f = tmp_path / "loop.edges"
    f.write_text("vertices 2\n1 1\n")
    code, _, err = run(capsys, "homology", str(f))
    assert code == 1 and "self-loop" in err


def test_console_script():
    exe = shutil.which("multipath")
    cmd = [exe] if exe else [sys.executable, "-m", "multipath.cli"]
    out = subprocess.run(cmd + ["homology", H], capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["betti"] == {"2": 2}
