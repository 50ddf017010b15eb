import json
import subprocess
import sys
from pathlib import Path

import pytest

from toricmoduli.cli import main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, "--format", "json", *argv)
    assert code == 0, err
    return json.loads(out)


def test_chi_rank3(capsys):
    assert run_json(capsys, "chi", "--rank", "3", "--delta", "-10")["results"]["chi"] == 3
    assert run_json(capsys, "chi", "--rank", "3", "--delta", "-18")["results"]["chi"] == -1


def test_chi_rank2_with_check(capsys):
    rec = run_json(capsys, "chi", "--rank", "2", "--delta", "-3")
    assert rec["results"] == {"chi": 1, "hurwitz_check": "1"}
    rec = run_json(capsys, "chi", "--rank", "2", "--delta", "-12")
    assert rec["results"]["chi"] == 1
    assert rec["results"]["hurwitz_check"] == "1"


def test_chi_tsv(capsys):
    code, out, _ = run(capsys, "chi", "--rank", "3", "--delta", "-10")
    assert code == 0
    assert "chi\t3" in out.splitlines()
    assert out.startswith("# chi")


def test_chi_bad_residue(capsys):
    code, out, err = run(capsys, "chi", "--rank", "3", "--delta", "-8")
    assert code == 2 and out == ""
    assert "0 or 4 mod 6" in err
    code, _, err = run(capsys, "chi", "--rank", "2", "--delta", "-5")
    assert code == 2 and "0 or 3 mod 4" in err


def test_series(capsys):
    rec = run_json(capsys, "series", "--rank", "2", "--residue", "3", "--depth", "1")
    assert rec["results"]["terms"] == [[-3, 1]]
    rec = run_json(capsys, "series", "--rank", "3", "--residue", "4", "--depth", "3")
    assert rec["results"]["terms"] == [[-4, 0], [-10, 3], [-16, 15]]
    code, out, _ = run(capsys, "series", "--rank", "3", "--residue", "4", "--depth", "2")
    assert out.splitlines()[-3:] == ["exponent\tcoefficient", "-4\t0", "-10\t3"]
    code, _, err = run(capsys, "series", "--rank", "3", "--residue", "1", "--depth", "2")
    assert code == 2


def test_polyhedron_cases(capsys):
    rec = run_json(capsys, "polyhedron", "--case", "rank2")
    assert rec["results"]["points"] == [["1", "1", "1"]]
    assert sorted(map(tuple, rec["results"]["rays"])) == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    rec = run_json(capsys, "polyhedron", "--case", "case3")
    assert ["0", "1", "1", "1", "3/2", "1"] in rec["results"]["points"]


def test_polyhedron_matrix(capsys, tmp_path):
    f = tmp_path / "m.txt"
    f.write_text("# orthant shifted by one\n2 2\n-1 0\n0 -1\n\n-1 -1\n")
    rec = run_json(capsys, "polyhedron", "--matrix", str(f))
    assert rec["results"]["points"] == [["1", "1"]]
    assert sorted(map(tuple, rec["results"]["rays"])) == [(0, 1), (1, 0)]


def test_polyhedron_matrix_errors(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("2 2\n-1 0\n0 x\n-1 -1\n")
    code, _, err = run(capsys, "polyhedron", "--matrix", str(f))
    assert code == 1 and "line 3" in err
    f.write_text("2 2\n-1 0\n0 -1 5\n-1 -1\n")
    code, _, err = run(capsys, "polyhedron", "--matrix", str(f))
    assert code == 1 and "line 3" in err and "expected 2" in err
    f.write_text("2 2\n-1 0\n")
    code, _, err = run(capsys, "polyhedron", "--matrix", str(f))
    assert code == 1
    code, _, err = run(capsys, "polyhedron")
    assert code == 2


def test_filtration_commands(capsys):
    path = str(DATA / "generic_ones.json")
    assert run_json(capsys, "filtration", path, "chern")["results"] == {"c1": 9, "c2": 30, "rank": 3}
    assert run_json(capsys, "filtration", path, "disc")["results"] == {"delta": -18, "normalized": "1"}
    assert run_json(capsys, "filtration", path, "stable")["results"]["stability"] == "stable"
    boundary = str(DATA / "boundary_e2.json")
    assert run_json(capsys, "filtration", boundary, "stable")["results"]["stability"] == "strictly_semistable"
    trivial = str(DATA / "trivial.json")
    assert run_json(capsys, "filtration", trivial, "chern")["results"] == {"c1": 0, "c2": 0, "rank": 3}


def test_standardize_idempotent(capsys, tmp_path):
    path = str(DATA / "generic_ones.json")
    first = run_json(capsys, "filtration", path, "standardize")["results"]["triple"]
    f = tmp_path / "s.json"
    f.write_text(json.dumps(first))
    second = run_json(capsys, "filtration", str(f), "standardize")["results"]["triple"]
    assert first == second


def test_filtration_bad_file(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"rank": 3, "arms": [[], []]}')
    code, _, err = run(capsys, "filtration", str(f), "chern")
    assert code == 1 and "3 arms" in err
    code, _, err = run(capsys, "filtration", str(tmp_path / "missing.json"), "chern")
    assert code == 1


def test_verify_suite(capsys):
    rec = run_json(capsys, "verify", "--suite", "hurwitz")
    assert rec["results"]["all_passed"] is True


def test_deterministic(capsys):
    a = run(capsys, "--format", "json", "polyhedron", "--case", "case1")[1]
    b = run(capsys, "polyhedron", "--case", "case1", "--format", "json")[1]
    assert a == b


def test_module_entry():
    out = subprocess.run([sys.executable, "-m", "toricmoduli", "chi", "--rank", "3", "--delta", "-10"],
                         capture_output=True, text=True, check=True).stdout
    assert "chi\t3" in out
