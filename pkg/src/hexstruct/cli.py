"""Command-line front end: ``hexstruct analyze|compare|batch|synth``.

Exit codes: 0 ok, 1 batch failures under --strict, 2 unreadable or
malformed input, 3 unsupported cell types, 4 internal invariant violation.
"""
from __future__ import annotations

import argparse
import glob
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .errors import (HexStructError, InternalError, MeshError, ParseError,
                     UnsupportedCellType, UnsupportedRecipe)
from .io import (complex_export, hsg_export, json_row, read_mesh, report_rows, sheet_export,
                 wireframe_export, write_report, write_vtk_export, write_vtk_mesh)
from .report import analyze_mesh, compare_reports
from .sheets import BLOCK_LEVEL
from .synth import synth_mesh
from .wireframe import sheet_wireframe

log = logging.getLogger("hexstruct")

MESH_SUFFIXES = (".vtk", ".mesh")


def exit_code(err):
    if isinstance(err, UnsupportedCellType):
        return 3
    if isinstance(err, InternalError):
        return 4
    if isinstance(err, (ParseError, MeshError, UnsupportedRecipe, OSError)):
        return 2
    if isinstance(err, HexStructError):
        return 4
    return 4


def _add_pipeline_flags(p):
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--rho", type=float, default=0.8)
    p.add_argument("--opacity-min", type=float, default=0.15)
    p.add_argument("--opacity-lambda", type=float, default=0.5)
    p.add_argument("--level", choices=("mesh", "base-complex"), default="mesh")
    p.add_argument("--decompose-all", action="store_true",
                   help="decompose every t3 sheet, not only the largest")
    p.add_argument("--strict", action="store_true",
                   help="reject unknown MEDIT keywords; fail batch runs on any error")
    p.add_argument("--no-timings", action="store_true", help="omit timing columns")
    p.add_argument("-o", "--output", help="report path (default: stdout)")


def build_parser():
    parser = argparse.ArgumentParser(prog="hexstruct",
                                     description="Structure analysis of hex-dominant meshes.")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="report and optional exports for one mesh")
    a.add_argument("input", nargs="?", help=".vtk or .mesh file")
    a.add_argument("--synth-grid", type=int, help="analyze a synthetic N^3 grid instead")
    a.add_argument("--synth-recipe", help="non-hex recipe or fixture name for the synthetic mesh")
    _add_pipeline_flags(a)
    for name in ("hsg", "complex", "sheets", "wireframe", "sheet-wireframes"):
        a.add_argument(f"--export-{name}", metavar="PATH")

    c = sub.add_parser("compare", help="side-by-side reports of two meshes plus deltas")
    c.add_argument("input_a")
    c.add_argument("input_b")
    _add_pipeline_flags(c)

    b = sub.add_parser("batch", help="CSV table over a directory or glob of meshes")
    b.add_argument("source", help="directory or glob pattern")
    b.add_argument("--jobs", type=int, default=1)
    _add_pipeline_flags(b)
    b.set_defaults(format="csv")

    s = sub.add_parser("synth", help="write a synthetic mesh as VTK")
    s.add_argument("--synth-grid", type=int, default=3)
    s.add_argument("--synth-recipe")
    s.add_argument("-o", "--output", required=True)
    return parser


def _pipeline_kwargs(args):
    return dict(rho=args.rho, o_min=args.opacity_min, lam=args.opacity_lambda,
                level=args.level, decompose_all=args.decompose_all)


def _emit(data, path):
    if path:
        Path(path).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _write_dir(path, name, data):
    d = Path(path)
    d.mkdir(parents=True, exist_ok=True)
    (d / name).write_bytes(data)


def cmd_analyze(args):
    if args.input:
        mesh = read_mesh(args.input, strict=args.strict)
        name = Path(args.input).stem
    elif args.synth_grid or args.synth_recipe:
        mesh = synth_mesh(args.synth_grid, args.synth_recipe)
        name = f"synth_{args.synth_grid or 3}" + (f"_{args.synth_recipe}" if args.synth_recipe else "")
    else:
        raise UnsupportedRecipe("analyze needs an input file or --synth-grid/--synth-recipe")
    res = analyze_mesh(mesh, name=name, **_pipeline_kwargs(args))
    _emit(write_report([res.report], args.format, timings=not args.no_timings), args.output)

    if args.export_hsg:
        Path(args.export_hsg).write_bytes(write_vtk_export(mesh, hsg_export(mesh, res.hsg)))
    if args.export_complex:
        Path(args.export_complex).write_bytes(write_vtk_export(mesh, complex_export(mesh, res.complex)))
    if args.export_wireframe:
        Path(args.export_wireframe).write_bytes(write_vtk_export(mesh, wireframe_export(mesh, res.wireframe)))
    if args.export_sheets:
        for s in res.sheets:
            _write_dir(args.export_sheets, f"sheet_{s.id:04d}.vtk", write_vtk_export(mesh, sheet_export(mesh, s)))
        for sid, subs in sorted(res.subsheets.items()):
            for s in subs:
                _write_dir(args.export_sheets, f"sheet_{sid:04d}_sub_{s.id:02d}.vtk",
                           write_vtk_export(mesh, sheet_export(mesh, s)))
    if args.export_sheet_wireframes:
        if args.level.replace("-", "_") == BLOCK_LEVEL:
            log.info("sheet wireframes use the mesh cells of each block-level sheet")
        for s in res.sheets:
            wf = sheet_wireframe(mesh, s, rho=args.rho, o_min=args.opacity_min, lam=args.opacity_lambda)
            _write_dir(args.export_sheet_wireframes, f"sheet_{s.id:04d}_wireframe.vtk",
                       write_vtk_export(mesh, wireframe_export(mesh, wf, f"sheet {s.id} wireframe")))
    return 0


def cmd_compare(args):
    reps = []
    for path in (args.input_a, args.input_b):
        mesh = read_mesh(path, strict=args.strict)
        reps.append(analyze_mesh(mesh, name=Path(path).stem, **_pipeline_kwargs(args)).report)
    delta = compare_reports(*reps)
    timings = not args.no_timings
    cols, rows = report_rows(reps + [delta], timings)
    if args.format == "json":
        out = {"a": json_row(rows[0]), "b": json_row(rows[1]), "delta": json_row(rows[2])}
        _emit((json.dumps(out, indent=2) + "\n").encode("utf-8"), args.output)
    else:
        _emit(write_report(rows, "csv", timings), args.output)
    return 0


def _analyze_path(job):
    path, kwargs, strict = job
    try:
        mesh = read_mesh(path, strict=strict)
        return analyze_mesh(mesh, name=Path(path).stem, **kwargs).report, None
    except Exception as err:  # reported per mesh; the batch carries on
        return None, (type(err).__name__, str(err), exit_code(err))


def collect_inputs(source):
    p = Path(source)
    if p.is_dir():
        files = [str(x) for x in p.iterdir() if x.suffix.lower() in MESH_SUFFIXES]
    else:
        files = [x for x in glob.glob(source) if Path(x).suffix.lower() in MESH_SUFFIXES]
        if not files and not any(ch in source for ch in "*?["):
            raise FileNotFoundError(f"no such directory: {source}")
    return sorted(files)


def cmd_batch(args):
    files = collect_inputs(args.source)
    jobs = [(f, _pipeline_kwargs(args), args.strict) for f in files]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_analyze_path, jobs))
    else:
        results = [_analyze_path(j) for j in jobs]
    reports, failures = [], []
    for f, (rep, err) in zip(files, results):
        if err is None:
            reports.append(rep)
        else:
            failures.append((f, err))
            log.error("%s: %s: %s", f, err[0], err[1])
    _emit(write_report(reports, args.format, timings=not args.no_timings), args.output)
    print(f"batch: {len(reports)} ok, {len(failures)} failed", file=sys.stderr)
    if failures and args.strict:
        return 1
    return 0


def cmd_synth(args):
    mesh = synth_mesh(args.synth_grid, args.synth_recipe)
    Path(args.output).write_bytes(write_vtk_mesh(mesh))
    return 0


COMMANDS = {"analyze": cmd_analyze, "compare": cmd_compare, "batch": cmd_batch,
            "synth": cmd_synth}


def main(argv=None):
    level = os.environ.get("HEXSTRUCT_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (HexStructError, OSError, ValueError) as err:
        code = 2 if isinstance(err, ValueError) else exit_code(err)
        print(f"hexstruct: error: {err}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
