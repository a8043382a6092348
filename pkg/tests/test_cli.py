import csv
import io
import json
import subprocess
import sys

import hexstruct.cli as cli
from hexstruct.errors import InternalError


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def synth(tmp_path, name, *args):
    path = tmp_path / name
    assert cli.main(["synth", *args, "-o", str(path)]) == 0
    return path


def test_analyze_synth_grid(capsys):
    code, out, _ = run(["analyze", "--synth-grid", "3"], capsys)
    assert code == 0
    (row,) = json.loads(out)
    assert (row["|C|"], row["|C_B|"], row["n_sheets"]) == (27, 1, 9)
    assert row["n_t1"] == row["n_t2"] == row["n_t3"] == 0
    assert row["T_GB"] >= 0


def test_missing_file_exit_2(capsys):
    code, _, err = run(["analyze", "/no/such/mesh.vtk"], capsys)
    assert code == 2 and "error" in err


def test_unsupported_and_malformed(tmp_path, capsys):
    tri = tmp_path / "tri.vtk"
    tri.write_text("# vtk DataFile Version 3.0\nt\nASCII\nDATASET UNSTRUCTURED_GRID\n"
                   "POINTS 3 float\n0 0 0\n1 0 0\n0 1 0\nCELLS 1 4\n3 0 1 2\nCELL_TYPES 1\n5\n")
    assert run(["analyze", str(tri)], capsys)[0] == 3
    bad = tmp_path / "bad.vtk"
    bad.write_text("not a mesh\n")
    assert run(["analyze", str(bad)], capsys)[0] == 2


def test_internal_error_exit_4(tmp_path, capsys, monkeypatch):
    def boom(*a, **k):
        raise InternalError("frame did not close")
    monkeypatch.setattr(cli, "analyze_mesh", boom)
    assert run(["analyze", "--synth-grid", "2"], capsys)[0] == 4


def test_compare_self_and_y(tmp_path, capsys):
    grid = synth(tmp_path, "grid.vtk", "--synth-grid", "3")
    y = synth(tmp_path, "y.vtk", "--synth-grid", "3", "--synth-recipe", "y_junction")
    code, out, _ = run(["compare", str(grid), str(grid), "--no-timings"], capsys)
    delta = json.loads(out)["delta"]
    assert code == 0
    assert all(v == 0 for k, v in delta.items() if k != "name")
    code, out, _ = run(["compare", str(grid), str(y), "--format", "csv"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 3 and int(rows[2]["|C_B|"]) > 0


def test_batch(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    code, out, _ = run(["batch", str(empty)], capsys)
    assert code == 0 and out.strip().count("\n") == 0 and out.startswith("name,")

    d = tmp_path / "meshes"
    d.mkdir()
    for name in ("twisted_ring", "spiral", "wrapped_prism"):
        synth(d, f"{name}.vtk", "--synth-recipe", name)
    code, out, _ = run(["batch", str(d), "--jobs", "2"], capsys)
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [r["name"] for r in rows] == ["spiral", "twisted_ring", "wrapped_prism"]
    assert rows[1]["n_t3"] == "1" and rows[1]["n_subsheets_largest_t3"] == "2"

    (d / "broken.vtk").write_text("garbage\n")
    code, out, err = run(["batch", str(d)], capsys)
    assert code == 0 and "1 failed" in err and out.count("\n") == 4
    assert run(["batch", str(d), "--strict"], capsys)[0] == 1


def test_exports_and_determinism(tmp_path, capsys):
    def once(tag):
        base = tmp_path / tag
        base.mkdir()
        args = ["analyze", "--synth-grid", "3", "--synth-recipe", "y_junction", "--no-timings",
                "--format", "csv", "-o", str(base / "report.csv"),
                "--export-hsg", str(base / "hsg.vtk"), "--export-complex", str(base / "bc.vtk"),
                "--export-wireframe", str(base / "wf.vtk"), "--export-sheets", str(base / "sheets"),
                "--export-sheet-wireframes", str(base / "sheet_wf")]
        assert cli.main(args) == 0
        return {p.relative_to(base): p.read_bytes() for p in sorted(base.rglob("*")) if p.is_file()}

    a, b = once("a"), once("b")
    assert a == b
    names = {str(p) for p in a}
    assert {"report.csv", "hsg.vtk", "bc.vtk", "wf.vtk"} <= names
    assert any(n.startswith("sheets/") for n in names)
    assert any(n.startswith("sheet_wf/") for n in names)
    assert b"is_pseudo" in a[next(p for p in a if str(p) == "hsg.vtk")]


def test_level_and_flags(capsys):
    code, out, _ = run(["analyze", "--synth-grid", "3", "--level", "base-complex",
                        "--rho", "0.9", "--opacity-min", "0.2", "--opacity-lambda", "1.0"], capsys)
    assert code == 0 and json.loads(out)[0]["n_sheets"] == 3


def test_log_env_and_console_script(tmp_path, monkeypatch):
    env_cmd = [sys.executable, "-m", "hexstruct.cli", "analyze", "--synth-grid", "2",
               "--format", "csv"]
    res = subprocess.run(env_cmd, capture_output=True, text=True,
                         env={"HEXSTRUCT_LOG": "DEBUG", "PATH": "/usr/bin:/bin"})
    assert res.returncode == 0
    assert res.stdout.splitlines()[1].startswith("synth_2,8,")
