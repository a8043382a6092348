"""In-memory hex-dominant mesh with full topological adjacency.

Cells are given as closed shells of face loops.  Faces shared by two cells
are stored once (matched by vertex set), edges are derived from face loops,
and every element kind gets dense integer handles assigned in order of
first appearance, so identical input always yields identical handles.
"""
from __future__ import annotations

import numpy as np

from .errors import DanglingIndex, NonManifoldFace, OpenShell

HEX = 0
NONHEX = 1

# Face loops of the standard cell types, in VTK/MEDIT corner order.
HEX_FACES = ((0, 3, 2, 1), (4, 5, 6, 7), (0, 1, 5, 4),
             (1, 2, 6, 5), (2, 3, 7, 6), (3, 0, 4, 7))
WEDGE_FACES = ((0, 1, 2), (3, 5, 4), (0, 3, 4, 1), (1, 4, 5, 2), (2, 5, 3, 0))
PYRAMID_FACES = ((0, 3, 2, 1), (0, 1, 4), (1, 2, 4), (2, 3, 4), (3, 0, 4))
TETRA_FACES = ((0, 2, 1), (0, 1, 3), (1, 2, 3), (2, 0, 3))


def shell_from_corners(corners, template):
    """Expand an ordered corner list into face loops using ``template``."""
    return [[corners[i] for i in face] for face in template]


def canonical_loop(loop):
    """Smallest rotation/reflection of a vertex loop (used as stored order)."""
    n = len(loop)
    best = None
    for seq in (list(loop), list(reversed(loop))):
        for k in range(n):
            cand = tuple(seq[k:] + seq[:k])
            if best is None or cand < best:
                best = cand
    return best


class HexDominantMesh:
    """Immutable indexed mesh G = (V, E, F, C) with all adjacency tables.

    Attributes are plain lists/tuples and numpy arrays; treat them as
    read-only.  ``is_hex[c]`` partitions the cells into H and the non-hex
    set.
    """

    def __init__(self, positions, face_vertices, face_cells, cell_faces):
        self.positions = positions
        self.face_vertices = face_vertices
        self.face_cells = face_cells
        self.cell_faces = cell_faces
        self.n_vertices = len(positions)
        self.n_faces = len(face_vertices)
        self.n_cells = len(cell_faces)
        self.non_conforming = False
        self.meta = {}
        self._build_edges()
        self._build_cells()
        self._build_vertex_tables()
        self._build_boundary()

    # -- construction helpers -------------------------------------------------
    def _build_edges(self):
        self.edge_index = {}
        self.edge_vertices = []
        self.face_edges = []
        for loop in self.face_vertices:
            eids = []
            n = len(loop)
            for i in range(n):
                a, b = loop[i], loop[(i + 1) % n]
                key = (a, b) if a < b else (b, a)
                eid = self.edge_index.get(key)
                if eid is None:
                    eid = len(self.edge_vertices)
                    self.edge_index[key] = eid
                    self.edge_vertices.append(key)
                eids.append(eid)
            self.face_edges.append(tuple(eids))
        self.n_edges = len(self.edge_vertices)
        self.edge_faces = [[] for _ in range(self.n_edges)]
        for f, eids in enumerate(self.face_edges):
            for e in eids:
                self.edge_faces[e].append(f)

    def _build_cells(self):
        self.cell_edges = []
        self.cell_vertices = []
        self.is_hex = np.zeros(self.n_cells, dtype=bool)
        self.edge_cells = [[] for _ in range(self.n_edges)]
        for c, fids in enumerate(self.cell_faces):
            count = {}
            vcount = {}
            for f in fids:
                for e in self.face_edges[f]:
                    count[e] = count.get(e, 0) + 1
                for v in self.face_vertices[f]:
                    vcount[v] = vcount.get(v, 0) + 1
            if any(k != 2 for k in count.values()):
                raise OpenShell(f"cell {c}: faces do not close into a shell")
            edges = tuple(sorted(count))
            verts = tuple(sorted(vcount))
            self.cell_edges.append(edges)
            self.cell_vertices.append(verts)
            for e in edges:
                self.edge_cells[e].append(c)
            self.is_hex[c] = (
                len(verts) == 8 and len(fids) == 6
                and all(len(self.face_vertices[f]) == 4 for f in fids)
                and all(k == 3 for k in vcount.values())
            )
        self.edge_valence = np.array([len(cs) for cs in self.edge_cells], dtype=np.int64)

    def _build_vertex_tables(self):
        nv = self.n_vertices
        self.vertex_edges = [[] for _ in range(nv)]
        self.vertex_faces = [[] for _ in range(nv)]
        self.vertex_cells = [[] for _ in range(nv)]
        for e, (a, b) in enumerate(self.edge_vertices):
            self.vertex_edges[a].append(e)
            self.vertex_edges[b].append(e)
        for f, loop in enumerate(self.face_vertices):
            for v in loop:
                self.vertex_faces[v].append(f)
        for c, verts in enumerate(self.cell_vertices):
            for v in verts:
                self.vertex_cells[v].append(c)
        self.vertex_valence = np.array([len(cs) for cs in self.vertex_cells], dtype=np.int64)

    def _build_boundary(self):
        self.boundary_face = np.array([len(cs) == 1 for cs in self.face_cells], dtype=bool)
        self.boundary_edge = np.zeros(self.n_edges, dtype=bool)
        self.boundary_vertex = np.zeros(self.n_vertices, dtype=bool)
        bcount = np.zeros(self.n_edges, dtype=np.int64)
        for f in np.flatnonzero(self.boundary_face):
            for e in self.face_edges[f]:
                bcount[e] += 1
            for v in self.face_vertices[f]:
                self.boundary_vertex[v] = True
        self.boundary_edge = bcount > 0
        # A conforming boundary surface is closed: two boundary faces per boundary edge.
        self.non_conforming = bool(np.any(self.boundary_edge & (bcount != 2)))

    # -- queries ----------------------------------------------------------------
    @property
    def n_hex(self):
        return int(self.is_hex.sum())

    def hex_cells(self):
        return [int(c) for c in np.flatnonzero(self.is_hex)]

    def nonhex_cells(self):
        return [int(c) for c in np.flatnonzero(~self.is_hex)]

    def edge_between(self, a, b):
        return self.edge_index.get((a, b) if a < b else (b, a))

    def other_vertex(self, e, v):
        a, b = self.edge_vertices[e]
        return b if v == a else a

    def is_irregular(self, e):
        """Interior edge with valence != 4, or boundary edge with valence != 2."""
        n = self.edge_valence[e]
        return bool(n != 2) if self.boundary_edge[e] else bool(n != 4)

    def irregular_mask(self):
        return np.where(self.boundary_edge, self.edge_valence != 2, self.edge_valence != 4)

    def nonhex_edge_mask(self):
        mask = np.zeros(self.n_edges, dtype=bool)
        for c in self.nonhex_cells():
            mask[list(self.cell_edges[c])] = True
        return mask

    def is_quad(self, f):
        return len(self.face_vertices[f]) == 4

    def opposite_edge_in_face(self, f, e):
        """Edge of quad ``f`` sharing no vertex with ``e`` (None for non-quads)."""
        eids = self.face_edges[f]
        if len(eids) != 4:
            return None
        return eids[(eids.index(e) + 2) % 4]

    def cells_sharing_face(self, c):
        out = []
        for f in self.cell_faces[c]:
            for d in self.face_cells[f]:
                if d != c:
                    out.append(d)
        return out

    def hex_corner_order(self, c):
        """Corners of hex ``c`` in VTK order (bottom loop, then matching top)."""
        bottom = self.face_vertices[self.cell_faces[c][0]]
        cell_edges = set(self.cell_edges[c])
        bset = set(bottom)
        top = []
        for v in bottom:
            for e in self.vertex_edges[v]:
                if e in cell_edges:
                    w = self.other_vertex(e, v)
                    if w not in bset:
                        top.append(w)
                        break
        order = list(bottom) + top
        p = self.positions[order]
        # Flip so the bottom loop's normal points at the top face.
        n = np.cross(p[1] - p[0], p[3] - p[0])
        if np.dot(n, p[4:].mean(axis=0) - p[:4].mean(axis=0)) < 0:
            order = [order[0], order[3], order[2], order[1],
                     order[4], order[7], order[6], order[5]]
        return order

    def __repr__(self):
        return (f"HexDominantMesh(V={self.n_vertices}, E={self.n_edges}, F={self.n_faces}, "
                f"C={self.n_cells}, hex={self.n_hex})")


def build_mesh(cells, positions):
    """Build a :class:`HexDominantMesh` from per-cell face loops.

    ``cells`` is a sequence of cells, each a sequence of face loops (vertex
    index sequences of length >= 3).  Raises :class:`DanglingIndex` for out
    of range indices, :class:`OpenShell` for faces that do not close, and
    :class:`NonManifoldFace` when a face is shared by more than two cells.
    """
    positions = np.asarray(positions, dtype=float).reshape(-1, 3)
    nv = len(positions)
    face_lookup = {}
    face_vertices = []
    face_cells = []
    cell_faces = []
    for c, loops in enumerate(cells):
        if len(loops) < 4:
            raise OpenShell(f"cell {c}: {len(loops)} faces cannot bound a volume")
        fids = []
        for loop in loops:
            loop = [int(v) for v in loop]
            if len(loop) < 3 or len(set(loop)) != len(loop):
                raise OpenShell(f"cell {c}: degenerate face {loop}")
            for v in loop:
                if v < 0 or v >= nv:
                    raise DanglingIndex(f"cell {c}: vertex {v} outside [0, {nv})")
            key = tuple(sorted(loop))
            f = face_lookup.get(key)
            if f is None:
                f = len(face_vertices)
                face_lookup[key] = f
                face_vertices.append(canonical_loop(loop))
                face_cells.append([])
            if c in face_cells[f]:
                raise OpenShell(f"cell {c}: face {loop} listed twice")
            face_cells[f].append(c)
            if len(face_cells[f]) > 2:
                raise NonManifoldFace(f"face {key} has more than two incident cells")
            fids.append(f)
        cell_faces.append(tuple(fids))
    return HexDominantMesh(positions, face_vertices, face_cells, cell_faces)


def cell_shells(mesh, cell_ids=None):
    """Face loops of the given cells (all cells by default), for rebuilding."""
    if cell_ids is None:
        cell_ids = range(mesh.n_cells)
    return [[list(mesh.face_vertices[f]) for f in mesh.cell_faces[c]] for c in cell_ids]


def submesh(mesh, cell_ids):
    """Mesh induced by ``cell_ids``.

    Returns ``(sub, vertex_map, cell_map)`` where ``vertex_map[i]`` and
    ``cell_map[i]`` are the parent handles of the submesh's vertex/cell ``i``.
    """
    cell_ids = sorted(set(int(c) for c in cell_ids))
    used = sorted({v for c in cell_ids for v in mesh.cell_vertices[c]})
    remap = {v: i for i, v in enumerate(used)}
    shells = [[[remap[v] for v in loop] for loop in shell]
              for shell in cell_shells(mesh, cell_ids)]
    sub = build_mesh(shells, mesh.positions[used] if used else np.zeros((0, 3)))
    return sub, np.array(used, dtype=np.int64), np.array(cell_ids, dtype=np.int64)


def check_invariants(mesh):
    """Return a list of violated structural invariants (empty when valid)."""
    problems = []
    for f, cs in enumerate(mesh.face_cells):
        if not 1 <= len(cs) <= 2:
            problems.append(f"face {f} has {len(cs)} cells")
    for c in range(mesh.n_cells):
        for e in mesh.cell_edges[c]:
            if c not in mesh.edge_cells[e]:
                problems.append(f"edge {e} missing cell {c}")
        for v in mesh.cell_vertices[c]:
            if c not in mesh.vertex_cells[v]:
                problems.append(f"vertex {v} missing cell {c}")
        for f in mesh.cell_faces[c]:
            if c not in mesh.face_cells[f]:
                problems.append(f"face {f} missing cell {c}")
        if mesh.is_hex[c]:
            if len(mesh.cell_edges[c]) != 12:
                problems.append(f"hex {c} has {len(mesh.cell_edges[c])} edges")
            own = set(mesh.cell_faces[c])
            for e in mesh.cell_edges[c]:
                if len(own.intersection(mesh.edge_faces[e])) != 2:
                    problems.append(f"hex {c} edge {e} not in two of its faces")
    for e in range(mesh.n_edges):
        if not mesh.edge_faces[e]:
            problems.append(f"edge {e} has no face")
        if mesh.edge_valence[e] != len(mesh.edge_cells[e]):
            problems.append(f"edge {e} valence mismatch")
        on_bd = any(mesh.boundary_face[f] for f in mesh.edge_faces[e])
        if on_bd != bool(mesh.boundary_edge[e]):
            problems.append(f"edge {e} boundary flag mismatch")
        for c in mesh.edge_cells[e]:
            if e not in mesh.cell_edges[c]:
                problems.append(f"cell {c} missing edge {e}")
    n_bd = sum(2 - len(cs) for cs in mesh.face_cells)
    if n_bd != int(mesh.boundary_face.sum()):
        problems.append("boundary face count mismatch")
    return problems
