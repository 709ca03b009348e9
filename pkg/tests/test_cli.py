from __future__ import annotations

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from qcitools import __version__
from qcitools.cli import main, parse_input
from qcitools.errors import ParseError
from qcitools.fields import GF, QQ

HERE = Path(__file__).parent
B_FILE = str(HERE / "data" / "B.txt")
GOLDEN = HERE / "golden"
REGENERATE = os.environ.get("QCITOOLS_REGENERATE_GOLDEN") == "1"

CI2 = "ring QQ[x, y]/(x^2, y^2)"


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_ring_and_ideal():
    job = parse_input("ring F7[x1..x3]/(x1^2, x2^2, x3^2)\nideal (x1 + x2)\n")
    assert job.field == GF(7)
    assert job.ring.names == ("x1", "x2", "x3")
    assert [str(g) for g in job.relations] == ["x1^2", "x2^2", "x3^2"]
    assert [str(g) for g in job.ideal] == ["x1 + x2"]


def test_parse_multiline_and_comments():
    job = parse_input(Path(B_FILE).read_text())
    assert len(job.relations) == 8 and len(job.ideal) == 2
    job = parse_input("ring QQ[a, b]/(a^2,\n  b^2)  # trailing comment\n")
    assert job.field == QQ and len(job.relations) == 2


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("ring F7[x1..x3]/(x1^2, x4^2)", 1, 24),
        ("ring F6[x]/(x^2)", 1, 6),
        ("ring F7[x1..x3]/(x1^2,\n x2 + + , x3^2)", 2, 9),
        ("ideal (x1)", 1, 1),
        ("ring F7[x, x]/(x^2)", 1, 9),
        ("ring F7[x]/(x^2) extra", 1, 18),
        ("ring F7[x]/(x^2\n", 1, 12),
        ("hello", 1, 1),
    ],
)
def test_parse_errors_carry_positions(text, line, column):
    with pytest.raises(ParseError) as err:
        parse_input(text)
    assert (err.value.line, err.value.column) == (line, column)


def test_input_error_exit_code(capsys):
    code, out, err = run(["hilbert", "ring F7[x]/(x^2 +)"], capsys)
    assert code == 2
    assert "E_SYNTAX" in err and "line 1" in err


def test_not_artinian_exit_code(capsys):
    code, _, err = run(["hilbert", "ring QQ[x, y]/(x^2)"], capsys)
    assert code == 2 and "E_NOT_ARTINIAN" in err


def test_hilbert_text_output(capsys):
    code, out, _ = run(["hilbert", "-f", B_FILE], capsys)
    assert code == 0
    assert "Hilbert series: [1, 5, 7, 3]" in out
    assert "Hilbert series of R/I: [1, 3]" in out


def test_assert_flag(capsys):
    code, _, _ = run(["qci", "-f", B_FILE, "--assert"], capsys)
    assert code == 0
    code, out, _ = run(["qci", CI2.replace("y^2", "x*y, y^3"), "ideal (x)", "--assert"], capsys)
    assert code == 1 and "not q.c.i." in out
    code, _, _ = run(["betti-ambient", "-f", B_FILE, "--assert"], capsys)
    assert code == 1
    code, _, _ = run(["betti-ambient", "-f", B_FILE], capsys)
    assert code == 0


def test_characteristic_two_note(capsys):
    code, out, _ = run(["hilbert", "ring F2[x, y]/(x^2, y^2)"], capsys)
    assert code == 0 and out.startswith("note: characteristic 2")
    code, out, _ = run(["hilbert", "ring F2[x, y]/(x^2, y^2)", "--json"], capsys)
    assert "characteristic 2" in json.loads(out)["notes"][0]


def test_json_envelope(capsys):
    code, out, _ = run(["koszul", "-f", B_FILE, "--json"], capsys)
    doc = json.loads(out)
    assert doc["schema"] == "qcitools.report/1"
    assert doc["version"] == __version__
    assert doc["input"]["field"] == "F101" and doc["input"]["order"] == "grevlex"
    assert doc["result"]["totals"]["H"] == [4, 8, 4]


def test_quadrics_parameters_recorded(capsys):
    code, out, _ = run(["quadrics", "--n", "2", "--trials", "2", "--seed", "9", "--json"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["parameters"]["seed"] == 9 and doc["parameters"]["prime"] == 101
    assert doc["result"]["schema"] == "qcitools.experiment/1"


def test_paper_subset(capsys):
    code, out, _ = run(["paper", "--only", "1,2,11"], capsys)
    assert code == 0
    assert out.count("[PASS]") == 3


GOLDEN_CASES = {
    "hilbert_B": ["hilbert", "-f", B_FILE],
    "gb_B": ["gb", "-f", B_FILE],
    "koszul_B": ["koszul", "-f", B_FILE],
    "qci_B": ["qci", "-f", B_FILE],
    "dual_B": ["dual", "-f", B_FILE],
    "resolve_B": ["resolve", "-f", B_FILE, "--hd-bound", "3"],
    "betti_ambient_B": ["betti-ambient", "-f", B_FILE],
    "ezd_ci2": ["ezd", "ring F7[x, y]/(x^2, y^2)"],
    "ezd_B_symbolic": ["ezd", "-f", B_FILE, "--mode", "symbolic"],
    "quadrics_n3": ["quadrics", "--n", "3", "--trials", "2", "--seed", "5"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_json_output_matches_golden_file(name, capsys):
    argv = GOLDEN_CASES[name] + ["--json"]
    code, out, _ = run(argv, capsys)
    assert code == 0
    # the file path is not part of the document, so the golden files are location independent
    path = GOLDEN / f"{name}.json"
    if REGENERATE:
        path.write_text(out)
    assert out == path.read_text()
    code, again, _ = run(argv, capsys)
    assert again == out


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qcitools.cli", "hilbert", "ring QQ[x]/(x^3)"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert "Hilbert series: [1, 1, 1]" in proc.stdout
