import shutil
import subprocess
import sys

import pytest

from feasichar.cli import main, parse_expected


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_roots(capsys):
    code, out, _ = run(capsys, "roots", "--group", "E8")
    assert code == 0
    assert "positive roots 120" in out
    assert "weyl group order 696729600" in out


def test_torsion_identity_only(capsys):
    code, out, _ = run(capsys, "torsion", "--group", "F4", "--order", "1")
    assert code == 0
    assert out.splitlines() == ["(1,0,0,0,0) order=1"]


def test_torsion_with_traces(capsys):
    code, out, _ = run(capsys, "torsion", "--group", "E8", "--order", "2", "--module", "adjoint")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 2
    assert sorted(line.rsplit("trace(adjoint)=", 1)[1] for line in lines) == ["-8", "24"]


def test_solve_alt17_matches_expected(capsys):
    code, out, _ = run(capsys, "solve", "--group", "E8", "--brauer", "a17_p2")
    assert code == 0
    assert "Alt17 < E8, p = 2" in out
    assert "1)   2    0    1    0    1" in out
    code, out, _ = run(capsys, "verify", "--group", "E8", "--brauer", "a17_p2", "--expected", "a17_e8_p2")
    assert code == 0 and out == "OK 1 rows match\n"


def test_solve_is_deterministic(capsys):
    outs = {run(capsys, "solve", "--group", "F4", "--brauer", "l27_p0", "-v")[1] for _ in range(3)}
    assert len(outs) == 1
    (out,) = outs
    assert "7)" in out and "8)" not in out
    assert "->" in out


def test_lines_format_parses_back(capsys):
    code, out, _ = run(capsys, "solve", "--group", "F4", "--brauer", "a5_p0", "--format", "lines")
    assert code == 0
    exp = parse_expected(out)
    assert (exp.name, exp.group_type, exp.p) == ("Alt5", "F4", 0)
    assert len(exp.rows) == 11


def test_table_format_parses_back(capsys, tmp_path):
    _, out, _ = run(capsys, "solve", "--group", "F4", "--brauer", "a6_p5")
    path = tmp_path / "a6.tbl"
    path.write_text(out)
    code, report, _ = run(capsys, "verify", "--group", "F4", "--brauer", "a6_p5", "--expected", str(path))
    assert code == 0, report


def test_corrupted_expected_gives_one_diff(capsys, tmp_path, expected_dir):
    lines = (expected_dir / "a5_f4_p0.tbl").read_text().splitlines(keepends=True)
    i = next(k for k, line in enumerate(lines) if line.startswith("3)"))
    cells = lines[i].split()
    cells[1] = str(int(cells[1]) + 1)
    cells[2] = str(int(cells[2]) - 1) if int(cells[2]) else str(int(cells[2]) + 1)
    lines[i] = "   ".join(cells) + "\n"
    path = tmp_path / "bad.tbl"
    path.write_text("".join(lines))
    code, out, _ = run(capsys, "verify", "--group", "F4", "--brauer", "a5_p0", "--expected", str(path))
    assert code == 1
    diffs = out.splitlines()[:-1]
    assert len(diffs) == 1 and diffs[0].startswith("row 3")
    assert out.splitlines()[-1] == "FAIL 1 difference(s)"


def test_flag_mismatch_reported(capsys, tmp_path, expected_dir):
    text = (expected_dir / "a17_e8_p2.tbl").read_text().replace("| no       no", "| yes      no")
    path = tmp_path / "flag.tbl"
    path.write_text(text)
    code, out, _ = run(capsys, "verify", "--group", "E8", "--brauer", "a17_p2", "--expected", str(path))
    assert code == 1 and "expected possprim yes" in out


def test_bad_table_reports_line(capsys, tmp_path, tables_dir):
    text = (tables_dir / "a5_p0.bct").read_text().replace("irr 4 deg 4", "irr 4 dgr 4")
    path = tmp_path / "bad.bct"
    path.write_text(text)
    lineno = text.splitlines().index(next(l for l in text.splitlines() if "dgr" in l)) + 1
    code, _, err = run(capsys, "solve", "--group", "F4", "--brauer", str(path))
    assert code == 2
    assert f"line {lineno}" in err


def test_invalid_table_rejected(capsys, tmp_path, tables_dir):
    text = (tables_dir / "a5_p0.bct").read_text().replace("irr 5 deg 5", "irr 5 deg 6")
    path = tmp_path / "bad.bct"
    path.write_text(text)
    code, _, err = run(capsys, "solve", "--group", "F4", "--brauer", str(path))
    assert code == 2 and "invalid table" in err


def test_missing_table(capsys):
    code, _, err = run(capsys, "solve", "--group", "F4", "--brauer", "nonesuch")
    assert code == 2 and "no such Brauer table" in err


def test_max_order_refusal(capsys):
    code, _, err = run(capsys, "solve", "--group", "E8", "--brauer", "a17_p2", "--max-order", "12")
    assert code == 2 and "above --max-order 12" in err


def test_data_override(capsys, tmp_path, monkeypatch):
    src = tmp_path / "data"
    shutil.copytree(main.__globals__["data_dir"](), src)
    (src / "tables" / "c.bct").write_text((src / "tables" / "trivial.bct").read_text())
    monkeypatch.setenv("FEASICHAR_DATA", str(src))
    code, out, _ = run(capsys, "solve", "--group", "F4", "--brauer", "c")
    assert code == 0 and "52" in out and "26" in out


def test_unknown_group_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["torsion", "--group", "G7", "--order", "2"])
    capsys.readouterr()


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "feasichar.cli", "torsion", "--group", "F4", "--order", "2"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert len(proc.stdout.splitlines()) == 2
