"""Readers and writers: ASCII VTK legacy, MEDIT .mesh, scene exports, reports.

All writers emit LF line endings and floats with 9 significant digits so
identical input gives byte-identical output.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import (DanglingReference, MalformedHeader, MalformedSection,
                     TruncatedStream, UnknownKeywordInStrictMode,
                     UnsupportedCellType)
from .mesh import (HEX_FACES, PYRAMID_FACES, TETRA_FACES, WEDGE_FACES,
                   build_mesh, shell_from_corners)

VTK_VERTEX = 1
VTK_LINE = 3
VTK_TETRA = 10
VTK_HEXAHEDRON = 12
VTK_WEDGE = 13
VTK_PYRAMID = 14
VTK_POLYHEDRON = 42

_VTK_KIND = {VTK_TETRA: "tetra", VTK_HEXAHEDRON: "hex", VTK_WEDGE: "wedge",
             VTK_PYRAMID: "pyramid", VTK_POLYHEDRON: "polyhedron"}
_SIZES = {"tetra": 4, "hex": 8, "wedge": 6, "pyramid": 5}
_TEMPLATES = {"tetra": TETRA_FACES, "hex": HEX_FACES, "wedge": WEDGE_FACES,
              "pyramid": PYRAMID_FACES}


def fmt_float(x):
    return format(float(x), ".9g")


@dataclass
class RawMesh:
    """Positions plus cell records ``(kind, data)``.

    ``data`` is a corner list for the fixed kinds and a face stream
    ``[n_faces, n0, v..., n1, v..., ...]`` for ``"polyhedron"``.
    """
    positions: np.ndarray
    cells: list

    def shells(self):
        out = []
        for k, (kind, data) in enumerate(self.cells):
            if kind == "polyhedron":
                out.append(parse_face_stream(data, where=f"cell {k}"))
            else:
                out.append(shell_from_corners(list(data), _TEMPLATES[kind]))
        return out

    def to_mesh(self):
        return build_mesh(self.shells(), self.positions)


def parse_face_stream(stream, where="polyhedron"):
    stream = [int(x) for x in stream]
    if not stream:
        raise MalformedSection(f"{where}: empty face stream")
    n_faces, pos, faces = stream[0], 1, []
    for _ in range(n_faces):
        if pos >= len(stream):
            raise MalformedSection(f"{where}: face stream shorter than its face count")
        n = stream[pos]
        if n < 3 or pos + 1 + n > len(stream):
            raise MalformedSection(f"{where}: bad face of {n} vertices")
        faces.append(stream[pos + 1:pos + 1 + n])
        pos += 1 + n
    if pos != len(stream):
        raise MalformedSection(f"{where}: {len(stream) - pos} trailing values in face stream")
    return faces


def _check_indices(raw):
    n = len(raw.positions)
    for k, (kind, data) in enumerate(raw.cells):
        ids = ([v for f in parse_face_stream(data, f"cell {k}") for v in f]
               if kind == "polyhedron" else data)
        if any(v < 0 or v >= n for v in ids):
            raise MalformedSection(f"cell {k}: vertex index outside [0, {n})")
    return raw


# ---------------------------------------------------------------- VTK legacy

class _Tokens:
    def __init__(self, lines):
        self.tokens = " ".join(lines).split()
        self.pos = 0

    def more(self):
        return self.pos < len(self.tokens)

    def word(self):
        if not self.more():
            raise TruncatedStream("unexpected end of file")
        self.pos += 1
        return self.tokens[self.pos - 1]

    def ints(self, n):
        return [self.int() for _ in range(n)]

    def int(self):
        w = self.word()
        try:
            return int(w)
        except ValueError:
            raise MalformedSection(f"expected an integer, got {w!r}") from None

    def floats(self, n):
        if self.pos + n > len(self.tokens):
            raise TruncatedStream(f"expected {n} values, file ends early")
        try:
            out = [float(w) for w in self.tokens[self.pos:self.pos + n]]
        except ValueError as err:
            raise MalformedSection(str(err)) from None
        self.pos += n
        return out


def read_vtk_legacy(data):
    """Parse an ASCII legacy VTK ``UNSTRUCTURED_GRID`` into a :class:`RawMesh`."""
    text = data.decode("ascii", errors="replace") if isinstance(data, bytes) else data
    lines = text.replace("\r\n", "\n").split("\n")
    if len(lines) < 4 or not lines[0].lower().startswith("# vtk datafile"):
        raise MalformedHeader("missing '# vtk DataFile' header line")
    if lines[2].strip().upper() != "ASCII":
        raise MalformedHeader(f"only ASCII files are supported, got {lines[2].strip()!r}")
    body = [ln for ln in lines[3:] if ln.strip() and not ln.lstrip().startswith("#")]
    tok = _Tokens(body)
    if not tok.more() or tok.word().upper() != "DATASET" or not tok.more() \
            or tok.word().upper() != "UNSTRUCTURED_GRID":
        raise MalformedHeader("expected 'DATASET UNSTRUCTURED_GRID'")

    positions = None
    conn = None         # list of per-cell id lists
    types = None
    while tok.more():
        key = tok.word().upper()
        if key == "POINTS":
            n = tok.int()
            tok.word()  # data type
            positions = np.array(tok.floats(3 * n), dtype=float).reshape(n, 3)
        elif key == "CELLS":
            n, size = tok.int(), tok.int()
            if tok.more() and tok.tokens[tok.pos].upper() == "OFFSETS":
                conn = _read_offsets_layout(tok, n, size)
            else:
                conn = _read_classic_layout(tok, n, size)
        elif key == "CELL_TYPES":
            n = tok.int()
            types = tok.ints(n)
        elif key in ("CELL_DATA", "POINT_DATA", "FIELD", "METADATA"):
            break  # attributes are not needed for the structure
        else:
            raise MalformedSection(f"unexpected keyword {key!r}")
    if positions is None or conn is None or types is None:
        raise TruncatedStream("file lacks POINTS, CELLS or CELL_TYPES")
    if len(types) != len(conn):
        raise MalformedSection(f"{len(conn)} cells but {len(types)} cell types")

    cells = []
    for k, (t, ids) in enumerate(zip(types, conn)):
        kind = _VTK_KIND.get(t)
        if kind is None:
            raise UnsupportedCellType(f"cell {k}: VTK cell type {t} is not supported")
        if kind != "polyhedron" and len(ids) != _SIZES[kind]:
            raise MalformedSection(f"cell {k}: {kind} with {len(ids)} vertices")
        cells.append((kind, tuple(ids)))
    return _check_indices(RawMesh(positions, cells))


def _read_classic_layout(tok, n, size):
    start = tok.pos
    conn = []
    for _ in range(n):
        m = tok.int()
        conn.append(tok.ints(m))
    if tok.pos - start != size:
        raise MalformedSection(f"CELLS size {size} does not match {tok.pos - start} values read")
    return conn


def _read_offsets_layout(tok, n, size):
    # VTK 5.x: CELLS <n_offsets> <n_conn>, OFFSETS <type> ..., CONNECTIVITY <type> ...
    tok.word()
    tok.word()
    offsets = tok.ints(n)
    if tok.word().upper() != "CONNECTIVITY":
        raise MalformedSection("expected CONNECTIVITY after OFFSETS")
    tok.word()
    flat = tok.ints(size)
    conn = [flat[offsets[i]:offsets[i + 1]] for i in range(n - 1)]
    if any(offsets[i] > offsets[i + 1] for i in range(n - 1)):
        raise MalformedSection("OFFSETS must be non-decreasing")
    return conn


# ---------------------------------------------------------------- MEDIT

_MEDIT_CELLS = {"hexahedra": ("hex", 8), "tetrahedra": ("tetra", 4),
                "prisms": ("wedge", 6), "pyramids": ("pyramid", 5)}
# Known sections we skip: number of integers/floats per entry.
_MEDIT_SKIP = {"edges": 3, "triangles": 4, "quadrilaterals": 5, "corners": 1,
               "ridges": 1, "requiredvertices": 1, "requirededges": 1,
               "requiredtriangles": 1, "requiredquadrilaterals": 1,
               "normals": 3, "normalatvertices": 2, "tangents": 3,
               "tangentatvertices": 2, "identifier": 0, "geometry": 0}


def _is_number(w):
    try:
        float(w)
        return True
    except ValueError:
        return False


def read_medit(data, strict=False):
    """Parse an ASCII MEDIT ``.mesh`` file; indices become 0-based.

    Unknown keywords raise in strict mode and are otherwise skipped along
    with the numbers that follow them.
    """
    text = data.decode("ascii", errors="replace") if isinstance(data, bytes) else data
    lines = [ln.split("#", 1)[0] for ln in text.replace("\r\n", "\n").split("\n")]
    tok = _Tokens(lines)
    positions = np.zeros((0, 3))
    cells = []
    dim = 3

    def section_ints(name, count, width):
        need = count * width
        if tok.pos + need > len(tok.tokens):
            raise MalformedSection(f"{name}: expected {count} entries")
        try:
            vals = [int(w) for w in tok.tokens[tok.pos:tok.pos + need]]
        except ValueError:
            raise MalformedSection(f"{name}: non-integer entry") from None
        tok.pos += need
        return vals

    while tok.more():
        raw = tok.word()
        key = raw.lower()
        if key == "end":
            break
        if key == "meshversionformatted":
            tok.word()
        elif key == "dimension":
            dim = _section_count(tok, raw)
            if dim not in (2, 3):
                raise MalformedSection(f"Dimension must be 2 or 3, got {dim}")
        elif key == "vertices":
            n = _section_count(tok, raw)
            if tok.pos + n * (dim + 1) > len(tok.tokens):
                raise MalformedSection(f"Vertices: expected {n} entries")
            vals = tok.floats(n * (dim + 1))
            arr = np.array(vals, dtype=float).reshape(n, dim + 1)[:, :dim]
            if dim == 2:
                arr = np.column_stack([arr, np.zeros(n)])
            positions = arr
        elif key in _MEDIT_CELLS:
            kind, width = _MEDIT_CELLS[key]
            n = _section_count(tok, raw)
            vals = section_ints(raw, n, width + 1)
            for k in range(n):
                row = vals[k * (width + 1):k * (width + 1) + width]
                cells.append((kind, tuple(v - 1 for v in row)))
        elif key in _MEDIT_SKIP:
            width = _MEDIT_SKIP[key]
            if width:
                n = _section_count(tok, raw)
                if tok.pos + n * width > len(tok.tokens):
                    raise MalformedSection(f"{raw}: expected {n} entries")
                tok.pos += n * width
        elif strict:
            raise UnknownKeywordInStrictMode(f"unknown MEDIT keyword {raw!r}")
        else:
            while tok.more() and _is_number(tok.tokens[tok.pos]):
                tok.pos += 1
    return _check_indices(RawMesh(positions, cells))


def _section_count(tok, name):
    if not tok.more():
        raise MalformedSection(f"{name}: missing entry count")
    w = tok.word()
    try:
        return int(w)
    except ValueError:
        raise MalformedSection(f"{name}: bad entry count {w!r}") from None


def read_raw(path, strict=False):
    path = Path(path)
    data = path.read_bytes()
    if path.suffix.lower() == ".mesh":
        return read_medit(data, strict=strict)
    return read_vtk_legacy(data)


def read_mesh(path, strict=False):
    return read_raw(path, strict=strict).to_mesh()


# ---------------------------------------------------------------- export

@dataclass
class SceneExport:
    """Mesh elements to draw, each group with aligned integer/float attributes.

    ``cells`` and ``lines`` (edge ids) carry per-element data dicts; listed
    ``vertices`` are written as highlighted points.
    """
    title: str = "hexstruct export"
    cells: tuple = ()
    cell_data: dict = field(default_factory=dict)
    lines: tuple = ()
    line_data: dict = field(default_factory=dict)
    vertices: tuple = ()


def _check_ids(ids, n, what):
    for i in ids:
        if not 0 <= int(i) < n:
            raise DanglingReference(f"{what} {i} does not exist (have {n})")


def _scalar_block(name, values):
    is_float = any(isinstance(v, (float, np.floating)) for v in values)
    out = [f"SCALARS {name} {'float' if is_float else 'int'} 1", "LOOKUP_TABLE default"]
    out += [fmt_float(v) if is_float else str(int(v)) for v in values]
    return out


def _merged_data(groups):
    """Concatenate per-group attribute dicts, padding missing names."""
    names = []
    for _, data, _ in groups:
        for k in data:
            if k not in names:
                names.append(k)
    merged = {}
    for name in names:
        col = []
        for count, data, default in groups:
            vals = data.get(name)
            if vals is None:
                col += [default.get(name, -1)] * count
            else:
                if len(vals) != count:
                    raise DanglingReference(f"attribute {name!r} has {len(vals)} values for {count} elements")
                col += list(vals)
        merged[name] = col
    return merged


def write_vtk_export(mesh, export):
    """Serialize a :class:`SceneExport` as ASCII legacy VTK.

    Exports with cells become an UNSTRUCTURED_GRID in which lines and
    highlighted vertices are appended as line/vertex cells; cell-free
    exports become POLYDATA with VERTICES and LINES.
    """
    _check_ids(export.cells, mesh.n_cells, "cell")
    _check_ids(export.lines, mesh.n_edges, "edge")
    _check_ids(export.vertices, mesh.n_vertices, "vertex")
    used = set(int(v) for v in export.vertices)
    for c in export.cells:
        used.update(mesh.cell_vertices[c])
    for e in export.lines:
        used.update(mesh.edge_vertices[e])
    used = sorted(used)
    pid = {v: i for i, v in enumerate(used)}

    out = ["# vtk DataFile Version 3.0", export.title.replace("\n", " ")[:255], "ASCII"]
    grid = bool(export.cells)
    out.append("DATASET UNSTRUCTURED_GRID" if grid else "DATASET POLYDATA")
    out.append(f"POINTS {len(used)} double")
    out += [" ".join(fmt_float(x) for x in mesh.positions[v]) for v in used]

    verts = [int(v) for v in export.vertices]
    vert_group = (len(verts), {"highlight": [1] * len(verts)}, {"highlight": 0})
    line_group = (len(export.lines), export.line_data, {"highlight": 0})
    if grid:
        records, types = [], []
        for c in export.cells:
            if mesh.is_hex[c]:
                records.append([pid[v] for v in mesh.hex_corner_order(c)])
                types.append(VTK_HEXAHEDRON)
            else:
                stream = [len(mesh.cell_faces[c])]
                for f in mesh.cell_faces[c]:
                    loop = mesh.face_vertices[f]
                    stream += [len(loop)] + [pid[v] for v in loop]
                records.append(stream)
                types.append(VTK_POLYHEDRON)
        for e in export.lines:
            records.append([pid[v] for v in mesh.edge_vertices[e]])
            types.append(VTK_LINE)
        for v in verts:
            records.append([pid[v]])
            types.append(VTK_VERTEX)
        size = sum(len(r) + 1 for r in records)
        out.append(f"CELLS {len(records)} {size}")
        out += [" ".join(str(x) for x in [len(r)] + r) for r in records]
        out.append(f"CELL_TYPES {len(types)}")
        out += [str(t) for t in types]
        groups = [(len(export.cells), export.cell_data, {"highlight": 0}), line_group, vert_group]
    else:
        out.append(f"VERTICES {len(verts)} {2 * len(verts)}")
        out += [f"1 {pid[v]}" for v in verts]
        out.append(f"LINES {len(export.lines)} {3 * len(export.lines)}")
        out += [" ".join(["2"] + [str(pid[v]) for v in mesh.edge_vertices[e]]) for e in export.lines]
        groups = [vert_group, line_group]
    total = sum(g[0] for g in groups)
    data = _merged_data(groups)
    if total and data:
        out.append(f"CELL_DATA {total}")
        for name, values in data.items():
            out += _scalar_block(name, values)
    return ("\n".join(out) + "\n").encode("ascii")


def write_vtk_mesh(mesh):
    """The mesh's own cells: hexes as type 12, everything else as polyhedra."""
    return write_vtk_export(mesh, SceneExport("hexstruct mesh", tuple(range(mesh.n_cells))))


# ---------------------------------------------------------------- export builders

def hsg_export(mesh, hsg):
    lines, valence, pseudo, chain = [], [], [], []
    for i, s in enumerate(hsg.singularities):
        for e in s.edges:
            lines.append(e)
            valence.append(s.valence)
            pseudo.append(0)
            chain.append(i)
    for e in hsg.pseudo_singularities:
        lines.append(e)
        valence.append(int(mesh.edge_valence[e]))
        pseudo.append(1)
        chain.append(-1)
    return SceneExport("hybrid singularity graph", lines=tuple(lines),
                       line_data={"valence": valence, "is_pseudo": pseudo, "chain_id": chain},
                       vertices=tuple(sorted(hsg.singular_vertices)))


def complex_export(mesh, bc):
    cells = tuple(range(mesh.n_cells))
    kinds = [0 if bc.components[k].kind == "hex" else 1 for k in bc.cell_component]
    return SceneExport("hybrid base complex", cells=cells,
                       cell_data={"component_id": [int(k) for k in bc.cell_component],
                                  "component_kind": kinds})


def sheet_export(mesh, sheet):
    cells = tuple(sheet.cells) + tuple(sheet.adjacent_nonhex)
    crossing = set(sheet.self_intersect_cells)
    return SceneExport(
        f"sheet {sheet.id}", cells=cells,
        cell_data={"sheet_id": [sheet.id] * len(cells),
                   "self_intersect": [int(c in crossing) for c in cells],
                   "nonhex": [int(not mesh.is_hex[c]) for c in cells]},
        lines=tuple(sheet.parallel_edges),
        line_data={"sheet_id": [sheet.id] * len(sheet.parallel_edges)},
        vertices=tuple(sheet.unmatched_vertices))


def wireframe_export(mesh, wf, title="vsg wireframe"):
    """All wireframe edges; hidden ones carry ``important=0`` and opacity 0."""
    lines, data = [], {k: [] for k in ("segment_id", "color_class", "opacity", "important",
                                       "reactivated", "valence")}
    for s in wf.segments:
        for e in s.edges:
            lines.append(e)
            data["segment_id"].append(s.id)
            data["color_class"].append(s.color_class)
            data["opacity"].append(float(wf.opacity.get(e, 0.0)))
            data["important"].append(int(s.important or s.is_irregular))
            data["reactivated"].append(int(s.reactivated))
            data["valence"].append(wf.valence.get(e, -1))
    return SceneExport(title, lines=tuple(lines), line_data=data)


# ---------------------------------------------------------------- reports

REPORT_COLUMNS = ("name", "|C|", "hex_ratio", "|C_B|", "hexbc_ratio", "n_sheets", "n_t1",
                  "n_t2", "n_t3", "n_subsheets_largest_t3", "T_GS", "T_GB", "T_VSGW",
                  "T_GSH", "T_GSH*", "non_conforming")
TIMING_COLUMNS = ("T_GS", "T_GB", "T_VSGW", "T_GSH", "T_GSH*")


def _cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v)
    return "" if v is None else str(v)


def report_rows(reports, timings=True):
    cols = [c for c in REPORT_COLUMNS if timings or c not in TIMING_COLUMNS]
    rows = []
    for r in reports:
        row = r.as_row() if hasattr(r, "as_row") else dict(r)
        rows.append({c: row.get(c) for c in cols})
    return cols, rows


def json_row(row):
    return {c: (float(fmt_float(v)) if isinstance(v, float) else v) for c, v in row.items()}


def write_report(reports, fmt="json", timings=True):
    """One row per report; ``timings=False`` drops the wall-clock columns."""
    if not isinstance(reports, (list, tuple)):
        reports = [reports]
    cols, rows = report_rows(reports, timings)
    if fmt == "json":
        return (json.dumps([json_row(r) for r in rows], indent=2) + "\n").encode("utf-8")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for row in rows:
            w.writerow([_cell(row[c]) for c in cols])
        return buf.getvalue().encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")
