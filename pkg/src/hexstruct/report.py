"""End-to-end structure analysis with per-stage wall-clock timings."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .base_complex import extract_base_complex
from .sheets import BLOCK_LEVEL, MESH_LEVEL, decompose_sheet, extract_sheets
from .singularity import extract_hybrid_singularity_graph, extract_vsg
from .wireframe import (DEFAULT_OPACITY_LAMBDA, DEFAULT_OPACITY_MIN, DEFAULT_RHO,
                        vsg_wireframe)


@dataclass
class StructureReport:
    name: str
    n_cells: int
    hex_ratio: float
    n_components: int
    hexbc_ratio: float
    n_sheets: int
    n_t1: int
    n_t2: int
    n_t3: int
    n_subsheets_largest_t3: int
    timings: dict = field(default_factory=dict)
    non_conforming: bool = False

    def as_row(self):
        row = {"name": self.name, "|C|": self.n_cells, "hex_ratio": self.hex_ratio,
               "|C_B|": self.n_components, "hexbc_ratio": self.hexbc_ratio,
               "n_sheets": self.n_sheets, "n_t1": self.n_t1, "n_t2": self.n_t2,
               "n_t3": self.n_t3, "n_subsheets_largest_t3": self.n_subsheets_largest_t3}
        for k in ("T_GS", "T_GB", "T_VSGW", "T_GSH", "T_GSH*"):
            row[k] = self.timings.get(k, 0.0)
        row["non_conforming"] = self.non_conforming
        return row


@dataclass
class Analysis:
    report: StructureReport
    hsg: object
    complex: object
    vsg: object
    wireframe: object
    sheets: list
    subsheets: dict          # sheet id -> list of subsheets


def normalize_level(level):
    level = (level or MESH_LEVEL).replace("-", "_")
    if level not in (MESH_LEVEL, BLOCK_LEVEL):
        raise ValueError(f"unknown sheet level {level!r}")
    return level


def analyze_mesh(mesh, name="mesh", rho=DEFAULT_RHO, o_min=DEFAULT_OPACITY_MIN,
                 lam=DEFAULT_OPACITY_LAMBDA, level=MESH_LEVEL, decompose_all=False):
    """Run every stage on ``mesh`` and collect a :class:`StructureReport`.

    Only the largest t3 sheet (by cell count) is decomposed unless
    ``decompose_all`` is set.
    """
    level = normalize_level(level)
    timings = {}
    clock = time.perf_counter

    t = clock()
    hsg = extract_hybrid_singularity_graph(mesh)
    timings["T_GS"] = clock() - t

    t = clock()
    bc = extract_base_complex(mesh, hsg)
    timings["T_GB"] = clock() - t

    t = clock()
    vsg = extract_vsg(mesh)
    wf = vsg_wireframe(mesh, vsg, rho=rho, o_min=o_min, lam=lam)
    timings["T_VSGW"] = clock() - t

    t = clock()
    sheets = extract_sheets(mesh, level=level, complex=bc if level == BLOCK_LEVEL else None)
    timings["T_GSH"] = clock() - t

    t = clock()
    t3 = [s for s in sheets if s.t3]
    if not decompose_all and t3:
        t3 = [max(t3, key=lambda s: (len(s.cells), -s.id))]
    subsheets = {s.id: decompose_sheet(mesh, s) for s in t3}
    timings["T_GSH*"] = clock() - t

    largest = [s for s in sheets if s.t3]
    n_sub = 0
    if largest:
        big = max(largest, key=lambda s: (len(s.cells), -s.id))
        n_sub = len(subsheets[big.id])

    n = mesh.n_cells
    report = StructureReport(
        name=name, n_cells=n, hex_ratio=mesh.n_hex / n if n else 0.0,
        n_components=bc.n_components,
        hexbc_ratio=bc.n_hex_components / bc.n_components if bc.n_components else 0.0,
        n_sheets=len(sheets), n_t1=sum(s.t1 for s in sheets), n_t2=sum(s.t2 for s in sheets),
        n_t3=sum(s.t3 for s in sheets), n_subsheets_largest_t3=n_sub,
        timings=timings, non_conforming=bool(mesh.non_conforming))
    return Analysis(report, hsg, bc, vsg, wf, sheets, subsheets)


def compare_reports(a, b):
    """Row-wise deltas ``b - a`` over the numeric report columns."""
    ra, rb = a.as_row(), b.as_row()
    delta = {"name": f"{a.name} -> {b.name}"}
    for k, v in ra.items():
        if k == "name":
            continue
        w = rb[k]
        delta[k] = int(w) - int(v) if isinstance(v, bool) else w - v
    return delta
