"""Hybrid base complex: separation surfaces and the component partition.

Separation surfaces start at every quad face incident to a singularity or
pseudo-singularity and sweep across regular interior edges (four incident
hexes, four quads) to the face on the opposite side, stopping at other
structural edges, at the boundary, or where non-quad faces appear.  The
resulting frame faces, together with every face of a non-hex cell and the
boundary surface, cut the volume into components.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import InternalError

HEX_COMPONENT = "hex"
NONHEX_COMPONENT = "nonhex"


@dataclass
class Frame:
    frame_vertices: set
    frame_edges: set
    frame_faces: set


@dataclass
class Component:
    cells: tuple
    kind: str
    is_ring: bool = False


@dataclass
class HybridBaseComplex:
    components: list
    cell_component: np.ndarray
    frame: Frame
    component_faces: set = field(default_factory=set)
    component_edges: set = field(default_factory=set)
    component_corners: set = field(default_factory=set)

    @property
    def n_components(self):
        return len(self.components)

    @property
    def n_hex_components(self):
        return sum(c.kind == HEX_COMPONENT for c in self.components)

    @property
    def n_nonhex_components(self):
        return sum(c.kind == NONHEX_COMPONENT for c in self.components)


def straight_edge_continuation(mesh, e, v, stop_vertices=()):
    """The unique edge at ``v`` sharing no face with ``e``, if any.

    Boundary edges continue along the surface only: candidates are boundary
    edges sharing no boundary face with ``e``.
    """
    if v in stop_vertices:
        return None
    if mesh.boundary_edge[e]:
        own = {f for f in mesh.edge_faces[e] if mesh.boundary_face[f]}
        cands = [x for x in mesh.vertex_edges[v]
                 if x != e and mesh.boundary_edge[x]
                 and not any(f in own for f in mesh.edge_faces[x] if mesh.boundary_face[f])]
    else:
        own = set(mesh.edge_faces[e])
        cands = [x for x in mesh.vertex_edges[v]
                 if x != e and not any(f in own for f in mesh.edge_faces[x])]
    return cands[0] if len(cands) == 1 else None


def surface_face_continuation(mesh, f, e, stop_edges=(), nonhex_edges=None):
    """Face across edge ``e`` continuing the surface through quad ``f``.

    Only defined across regular interior edges with four quad faces; the
    returned face is the one sharing no cell with ``f``.
    """
    if not mesh.is_quad(f) or e not in mesh.face_edges[f]:
        return None
    if mesh.boundary_edge[e] or mesh.edge_valence[e] != 4 or e in stop_edges:
        return None
    if nonhex_edges is not None:
        if nonhex_edges[e]:
            return None
    elif not all(mesh.is_hex[c] for c in mesh.edge_cells[e]):
        return None
    faces = mesh.edge_faces[e]
    if len(faces) != 4 or not all(mesh.is_quad(g) for g in faces):
        return None
    own = set(mesh.face_cells[f])
    cands = [g for g in faces if g != f and not own.intersection(mesh.face_cells[g])]
    return cands[0] if len(cands) == 1 else None


def _trace_edges(mesh, start_vertices, stop_vertices, frame_edges):
    added = set()
    for v in sorted(start_vertices):
        for e in mesh.vertex_edges[v]:
            if e in frame_edges or e in added:
                continue
            cur, at = e, v
            while True:
                added.add(cur)
                u = mesh.other_vertex(cur, at)
                if u in stop_vertices:
                    break
                if not mesh.boundary_edge[cur] and mesh.boundary_vertex[u]:
                    break
                nxt = straight_edge_continuation(mesh, cur, u, stop_vertices)
                if nxt is None or nxt in frame_edges or nxt in added:
                    break
                cur, at = nxt, u
    return added


def trace_frame(mesh, hsg, extra_edges=()):
    """Frame of the hybrid base complex traced from ``hsg``.

    ``extra_edges`` are treated as additional structural edges (used to
    check that re-seeding with an existing frame adds nothing).
    """
    structural = hsg.frame_edges() | set(extra_edges)
    seed_vertices = set(hsg.singular_vertices) | set(hsg.pseudo_singular_vertices)
    seed_vertices |= {v for e in structural for v in mesh.edge_vertices[e]}
    frame_faces = set(int(f) for f in np.flatnonzero(mesh.boundary_face))
    for c in mesh.nonhex_cells():
        frame_faces.update(mesh.cell_faces[c])

    nonhex_edges = mesh.nonhex_edge_mask()
    surface = set()
    budget = mesh.n_faces + 1
    for s in sorted(structural):
        for f in sorted(mesh.edge_faces[s]):
            if not mesh.is_quad(f) or f in surface:
                continue
            surface.add(f)
            queue = deque([f])
            while queue:
                budget -= 1
                if budget < 0:
                    raise InternalError("separation surface sweep did not terminate")
                g = queue.popleft()
                for e in mesh.face_edges[g]:
                    h = surface_face_continuation(mesh, g, e, structural, nonhex_edges)
                    if h is not None and h not in surface:
                        surface.add(h)
                        queue.append(h)
    frame_faces |= surface

    frame_edges = set(structural)
    frame_edges |= _trace_edges(mesh, seed_vertices, seed_vertices, frame_edges)
    for f in frame_faces:
        frame_edges.update(mesh.face_edges[f])
    frame_vertices = set(seed_vertices)
    for e in frame_edges:
        frame_vertices.update(mesh.edge_vertices[e])
    return Frame(frame_vertices, frame_edges, frame_faces)


def _count_patches(mesh, cells):
    cellset = set(cells)
    bfaces = [f for c in cells for f in mesh.cell_faces[c]
              if not all(d in cellset for d in mesh.face_cells[f]) or len(mesh.face_cells[f]) == 1]
    parent = {f: f for f in bfaces}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_edge = {}
    for f in bfaces:
        for e in mesh.face_edges[f]:
            by_edge.setdefault(e, []).append(f)
    for e, fs in by_edge.items():
        inside = sum(1 for c in mesh.edge_cells[e] if c in cellset)
        if inside == 2 and len(fs) == 2:
            parent[find(fs[0])] = find(fs[1])
    return len({find(f) for f in bfaces})


def partition_components(mesh, frame):
    """Flood-fill hex cells across non-frame faces; non-hex cells stand alone."""
    comp = np.full(mesh.n_cells, -1, dtype=np.int64)
    components = []
    for c in range(mesh.n_cells):
        if comp[c] >= 0:
            continue
        cid = len(components)
        if not mesh.is_hex[c]:
            comp[c] = cid
            components.append(Component((c,), NONHEX_COMPONENT))
            continue
        comp[c] = cid
        members = [c]
        queue = deque([c])
        while queue:
            x = queue.popleft()
            for f in mesh.cell_faces[x]:
                if f in frame.frame_faces:
                    continue
                for y in mesh.face_cells[f]:
                    if y != x and comp[y] < 0 and mesh.is_hex[y]:
                        comp[y] = cid
                        members.append(y)
                        queue.append(y)
        members.sort()
        components.append(Component(tuple(members), HEX_COMPONENT,
                                    is_ring=_count_patches(mesh, members) != 6))

    faces_b = set(frame.frame_faces)
    edges_b = set()
    for e in frame.frame_edges:
        fs = [f for f in mesh.edge_faces[e] if f in faces_b]
        if len(fs) != 2 or set(mesh.face_cells[fs[0]]) & set(mesh.face_cells[fs[1]]):
            if fs:
                edges_b.add(e)
    count = {}
    for e in edges_b:
        for v in mesh.edge_vertices[e]:
            count[v] = count.get(v, 0) + 1
    corners = {v for v, k in count.items() if k >= 3}
    return HybridBaseComplex(components, comp, frame, faces_b, edges_b, corners)


def extract_base_complex(mesh, hsg):
    return partition_components(mesh, trace_frame(mesh, hsg))
