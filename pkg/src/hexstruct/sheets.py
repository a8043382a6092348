"""Hexahedral sheets: extraction, non-hex augmentation, matching-based
classification and breadth-first decomposition into subsheets.

Two edges are parallel when they are opposite sides of one quad face.  A
sheet is a transitive closure of that relation over the quad faces of hex
cells; its parallel edge set is *perfect* when it is a matching, i.e. no two
of its edges share a vertex.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from itertools import combinations

import numpy as np

MESH_LEVEL = "mesh"
BLOCK_LEVEL = "base_complex"


@dataclass
class Sheet:
    id: int
    parallel_edges: tuple
    cells: tuple
    adjacent_nonhex: tuple = ()
    unmatched_vertices: tuple = ()
    self_intersect_cells: tuple = ()
    perfect: bool = True
    t1: bool = False
    t2: bool = False
    t3: bool = False
    level: str = MESH_LEVEL
    parent: int | None = None

    @property
    def flags(self):
        return {name for name in ("t1", "t2", "t3") if getattr(self, name)}


@dataclass(frozen=True)
class Classification:
    perfect: bool
    t1: bool
    t2: bool
    t3: bool
    unmatched_vertices: tuple
    self_intersect_cells: tuple = field(default=())


def parallel(mesh, ei, ej):
    """True iff some quad face contains both edges and they share no vertex."""
    if ei == ej or set(mesh.edge_vertices[ei]) & set(mesh.edge_vertices[ej]):
        return False
    return any(mesh.is_quad(f) and ej in mesh.face_edges[f] for f in mesh.edge_faces[ei])


def _hex_quad_faces(mesh):
    return [f for f in range(mesh.n_faces)
            if mesh.is_quad(f) and any(mesh.is_hex[c] for c in mesh.face_cells[f])]


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        while p != self.parent[p]:
            self.parent[p] = self.parent[self.parent[p]]
            p = self.parent[p]
        self.parent[x] = p
        return p

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _orthogonal_edge(mesh, c, f, v):
    face_edges = set(mesh.face_edges[f])
    cell_edges = set(mesh.cell_edges[c])
    for e in mesh.vertex_edges[v]:
        if e in cell_edges and e not in face_edges:
            return e
    return None


def extract_sheets(mesh, level=MESH_LEVEL, complex=None, augment=True, classify=True):
    """Sheets as closures of the parallel relation over hex quad faces.

    At ``level="base_complex"`` (requires ``complex``) mesh-level sheets
    crossing the same hex component in the same direction are merged, which
    maps every block-level sheet to its mesh edges.
    """
    uf = _UnionFind()
    for f in _hex_quad_faces(mesh):
        e0, e1, e2, e3 = mesh.face_edges[f]
        uf.union(e0, e2)
        uf.union(e1, e3)
    if level == BLOCK_LEVEL:
        if complex is None:
            raise ValueError("base_complex level needs the hybrid base complex")
        frame_faces = complex.frame.frame_faces
        comp = complex.cell_component
        for f in range(mesh.n_faces):
            cs = mesh.face_cells[f]
            if (len(cs) == 2 and f not in frame_faces and mesh.is_hex[cs[0]]
                    and mesh.is_hex[cs[1]] and comp[cs[0]] == comp[cs[1]]):
                for v in mesh.face_vertices[f]:
                    a = _orthogonal_edge(mesh, cs[0], f, v)
                    b = _orthogonal_edge(mesh, cs[1], f, v)
                    if a is not None and b is not None:
                        uf.union(a, b)
    elif level != MESH_LEVEL:
        raise ValueError(f"unknown level {level!r}")

    groups = {}
    for c in mesh.hex_cells():
        for e in mesh.cell_edges[c]:
            groups.setdefault(uf.find(e), set()).add(e)
    sheets = []
    for members in sorted(groups.values(), key=min):
        edges = tuple(sorted(members))
        cells = sorted({c for e in edges for c in mesh.edge_cells[e] if mesh.is_hex[c]})
        sheet = Sheet(len(sheets), edges, tuple(cells), level=level)
        if augment:
            sheet = augment_nonhex(mesh, sheet)
        if classify:
            sheet = apply_classification(sheet, classify_sheet(mesh, sheet))
        sheets.append(sheet)
    return sheets


def augment_nonhex(mesh, sheet):
    """Attach the non-hex cells that own an edge of the parallel set."""
    adj = sorted({c for e in sheet.parallel_edges for c in mesh.edge_cells[e]
                  if not mesh.is_hex[c]})
    return replace(sheet, adjacent_nonhex=tuple(adj))


def classify_sheet(mesh, sheet):
    """Matching-based classification of a sheet's parallel edge set.

    Every vertex shared by two or more parallel edges is unmatched.  Each
    sharing pair contributes type 1 when a non-hex cell at the vertex holds
    one of the edges, type 3 when one hex cell holds both, and type 2 when
    they sit in two distinct face-adjacent hexes without a common hex.
    """
    by_vertex = {}
    for e in sheet.parallel_edges:
        for v in mesh.edge_vertices[e]:
            by_vertex.setdefault(v, []).append(e)
    unmatched = sorted(v for v, es in by_vertex.items() if len(es) > 1)
    t1 = t2 = t3 = False
    crossing = set()
    for v in unmatched:
        for ei, ej in combinations(by_vertex[v], 2):
            ci, cj = mesh.edge_cells[ei], mesh.edge_cells[ej]
            if any(not mesh.is_hex[c] for c in ci) or any(not mesh.is_hex[c] for c in cj):
                t1 = True
            hi = [c for c in ci if mesh.is_hex[c]]
            hj = [c for c in cj if mesh.is_hex[c]]
            common = set(hi).intersection(hj)
            if common:
                t3 = True
                crossing.update(common)
            elif not t2:
                t2 = any(set(mesh.cell_faces[a]).intersection(mesh.cell_faces[b])
                         for a in hi for b in hj)
    return Classification(not unmatched, t1, t2, t3, tuple(unmatched), tuple(sorted(crossing)))


def apply_classification(sheet, cls):
    return replace(sheet, perfect=cls.perfect, t1=cls.t1, t2=cls.t2, t3=cls.t3,
                   unmatched_vertices=cls.unmatched_vertices,
                   self_intersect_cells=cls.self_intersect_cells)


def decompose_sheet(mesh, sheet):
    """Split a sheet into subsheets free of self-intersection.

    Each pass grows a parallel set breadth-first from the smallest unused
    edge (frontier in ascending edge order) and rejects any candidate that
    shares a hex cell with a neighbouring member.  Cells fully covered by
    the accepted edges form the subsheet; accepted edges left without such a
    cell are dropped.
    """
    ep = set(sheet.parallel_edges)
    hex_quads = {f for e in ep for f in mesh.edge_faces[e]
                 if mesh.is_quad(f) and any(mesh.is_hex[c] for c in mesh.face_cells[f])}
    cell_of = {c for c in sheet.cells}

    def neighbours(e):
        out = set()
        for f in mesh.edge_faces[e]:
            if f in hex_quads:
                o = mesh.opposite_edge_in_face(f, e)
                if o in ep:
                    out.add(o)
        if sheet.level == BLOCK_LEVEL:
            own = set(mesh.edge_cells[e])
            for v in mesh.edge_vertices[e]:
                for x in mesh.vertex_edges[v]:
                    if x != e and x in ep and not own.intersection(mesh.edge_cells[x]):
                        out.add(x)
        return sorted(out)

    def conflicts(e, chosen):
        a, b = mesh.edge_vertices[e]
        for c in mesh.edge_cells[e]:
            if not mesh.is_hex[c]:
                continue
            for x in mesh.cell_edges[c]:
                if x != e and x in chosen and (a in mesh.edge_vertices[x] or b in mesh.edge_vertices[x]):
                    return True
        return False

    remaining = set(ep)
    subsheets = []
    while remaining:
        seed = min(remaining)
        chosen = {seed}
        queue = deque([seed])
        while queue:
            e = queue.popleft()
            for x in neighbours(e):
                if x in chosen or x not in remaining:
                    continue
                if conflicts(x, chosen):
                    continue
                chosen.add(x)
                queue.append(x)
        remaining -= chosen
        cells = []
        for c in sorted({c for e in chosen for c in mesh.edge_cells[e] if c in cell_of}):
            covered = {v for e in chosen if e in mesh.cell_edges[c] for v in mesh.edge_vertices[e]}
            if covered.issuperset(mesh.cell_vertices[c]):
                cells.append(c)
        cellset = set(cells)
        kept = tuple(sorted(e for e in chosen if cellset.intersection(mesh.edge_cells[e])))
        if not kept:
            continue
        sub = Sheet(len(subsheets), kept, tuple(cells), level=sheet.level, parent=sheet.id)
        sub = augment_nonhex(mesh, sub)
        subsheets.append(apply_classification(sub, classify_sheet(mesh, sub)))
    return subsheets


def sheet_cover_counts(mesh, sheets):
    counts = np.zeros(mesh.n_cells, dtype=np.int64)
    for s in sheets:
        counts[list(s.cells)] += 1
    return counts
