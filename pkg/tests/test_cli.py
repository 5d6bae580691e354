import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from lieboundary.cli import main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_orbits_series_A(capsys):
    code, out, _ = run(capsys, "verify-orbits", "--series", "A", "--max-rank", "5")
    assert code == 0
    data = json.loads(out)
    ids = {e["id"] for r in data["reports"] for e in r["equations"]}
    assert {"Al.orbit.step", "Al.orbit.cycle"} <= ids
    assert [r["rank"] for r in data["reports"]] == [2, 3, 4, 5]


def test_verify_orbits_all(capsys):
    code, out, _ = run(capsys, "verify-orbits", "--all", "--max-rank", "30")
    assert code == 0
    data = json.loads(out)
    assert data["pass"]
    series = {r["series"] for r in data["reports"]}
    assert series == {"A", "B", "C", "D", "A1odd", "D1", "A1even"}


def test_config_errors(capsys):
    assert run(capsys, "verify-orbits", "--series", "E", "--max-rank", "5")[0] == 2
    assert run(capsys, "verify-orbits", "--series", "A1odd", "--max-rank", "20")[0] == 2
    assert run(capsys, "slgen", "--l", "2", "--q", "6")[0] == 2
    assert run(capsys, "slgen", "--l", "0", "--q", "2")[0] == 2
    assert run(capsys, "slgen", "--l", "x", "--q", "2")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "boundary", "--l", "2", "--q", "2", "--threads", "0")[0] == 2


def test_slgen(capsys):
    code, out, _ = run(capsys, "slgen", "--l", "2", "--q", "2", "--check-order")
    data = json.loads(out)
    assert code == 0 and data["order"] == 168 and data["match"]
    code, out, _ = run(capsys, "slgen", "--l", "3", "--q", "2", "--check-order")
    assert json.loads(out)["order"] == 20160
    code, out, _ = run(capsys, "slgen", "--l", "2", "--q", "2")
    data = json.loads(out)
    assert "match" not in data and data["order"] == 168
    code, out, _ = run(capsys, "slgen", "--l", "2", "--q", "3^1")
    assert json.loads(out)["order"] == 5616


def test_slgen_cap(capsys):
    code, out, _ = run(capsys, "slgen", "--l", "2", "--q", "3", "--max-order", "1000", "--check-order")
    data = json.loads(out)
    assert code == 3 and data["partial"] and data["order"] == 1000


def test_boundary(capsys):
    code, out, _ = run(capsys, "boundary", "--l", "3", "--q", "2")
    data = json.loads(out)
    assert code == 0 and Fraction(data["ratio"]["num"], data["ratio"]["den"]) <= 2
    code, out, _ = run(capsys, "boundary", "--l", "2", "--q", "2", "--sweep-oracle")
    assert code == 0 and json.loads(out)["sweep_agrees"] is True
    code, _, _ = run(capsys, "boundary", "--l", "3", "--q", "3", "--max-order", "100")
    assert code == 3


def test_boundary_l4(capsys):
    code, out, _ = run(capsys, "boundary", "--l", "4", "--q", "2")
    data = json.loads(out)
    assert code == 0 and Fraction(data["ratio"]["num"], data["ratio"]["den"]) <= Fraction(3, 2)


def test_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "--l", "2", "--q", "2", "--mode", "dense")
    data = json.loads(out)
    assert code == 0 and data["cheeger_consistent"] and data["method"] == "dense"
    code, _, _ = run(capsys, "spectrum", "--l", "2", "--q", "3", "--mode", "dense")
    assert code == 3


def test_report_csv(capsys):
    code, out, _ = run(capsys, "report", "--csv", "--l", "2,3,4", "--q", "2")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 3
    assert list(rows[0]) == ["l", "q", "n", "d", "lambda2", "gap", "ratio_num", "ratio_den"]
    ratios = [Fraction(int(r["ratio_num"]), int(r["ratio_den"])) for r in rows]
    assert ratios == sorted(ratios, reverse=True)
    assert rows[2]["lambda2"] == ""  # 9,999,360 vertices: beyond the spectral cap


def test_export_is_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert run(capsys, "export", "--l", "2", "--q", "2", "--format", "edgelist", "-o", str(a))[0] == 0
    assert run(capsys, "export", "--l", "2", "--q", "2", "--output", str(b), "--threads", "3")[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().startswith("# cayley sl l=2 q=2 n=168 d=3\n")


def test_boundary_output_independent_of_threads(tmp_path, capsys):
    outs = []
    for t in ("1", "2", "4"):
        p = tmp_path / f"b{t}.json"
        assert run(capsys, "boundary", "--l", "3", "--q", "2", "--sweep-oracle", "--threads", t, "-o", str(p))[0] == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1] == outs[2]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lieboundary", "slgen", "--l", "1", "--q", "5"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["order"] == 120
