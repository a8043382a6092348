"""VSG wireframe: tracing, importance-based simplification, colors, opacity.

The complete wireframe is every VSG edge plus straight mesh-edge traces
launched from each singular vertex.  It is cut into segments (maximal
chains between nodes), and simplification works on segments:

* a node is non-important unless it is a singular vertex that is not a
  plain all-quad boundary corner;
* a regular segment between two non-important nodes is non-important;
* at a singular vertex, regular segments that can only pair with each
  other are non-important (a one-to-many hub loses itself and its
  lowest-id partner);
* segments carrying an irregular edge are always kept, and non-important
  segments touching an irregular edge away from a singular vertex are
  re-activated.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace

from .base_complex import straight_edge_continuation
from .mesh import submesh
from .singularity import extract_vsg

DEFAULT_RHO = 0.8
DEFAULT_OPACITY_MIN = 0.15
DEFAULT_OPACITY_LAMBDA = 0.5


@dataclass
class Segment:
    id: int
    edges: tuple
    vertices: tuple
    is_irregular: bool
    important: bool = True
    reactivated: bool = False
    color_class: int = 0

    @property
    def retained(self):
        return self.is_irregular or self.important or self.reactivated


@dataclass
class VsgWireframe:
    nodes: set
    segments: list
    singular_vertices: set
    irregular_edges: set
    valence: dict                   # edge -> valence, for irregular edges
    nonhex_edges: set = field(default_factory=set)
    opacity: dict = field(default_factory=dict)

    def edges(self):
        return {e for s in self.segments for e in s.edges}

    def retained_segments(self):
        return [s for s in self.segments if s.retained]

    def retained_edges(self):
        return {e for s in self.segments if s.retained for e in s.edges}


@dataclass
class ColorAssignment:
    partial_parallel_pairs: set
    color_class: list
    rho: float
    class_of: list


def _trace_from(mesh, v, e, singular, touches_irregular, irregular):
    out = []
    seen = set()
    cur, at = e, v
    while cur not in seen:
        seen.add(cur)
        out.append(cur)
        u = mesh.other_vertex(cur, at)
        if u in singular or touches_irregular[u]:
            break
        if not mesh.boundary_edge[cur] and mesh.boundary_vertex[u]:
            break
        nxt = straight_edge_continuation(mesh, cur, u)
        if nxt is None or irregular[nxt]:
            break
        cur, at = nxt, u
    return out


def _segment(mesh, wedges, nodes):
    inc = {}
    for e in wedges:
        for v in mesh.edge_vertices[e]:
            inc.setdefault(v, []).append(e)
    for v in inc:
        inc[v].sort()
    nodes = set(nodes) | {v for v, es in inc.items() if len(es) != 2}
    used = set()
    paths = []

    def walk(v, e):
        es, vs = [e], [v]
        used.add(e)
        u = mesh.other_vertex(e, v)
        vs.append(u)
        while u not in nodes:
            nxt = [x for x in inc[u] if x not in used]
            if not nxt:
                break
            e = nxt[0]
            used.add(e)
            es.append(e)
            u = mesh.other_vertex(e, u)
            vs.append(u)
        return es, vs

    for v in sorted(nodes):
        for e in inc.get(v, ()):
            if e not in used:
                paths.append(walk(v, e))
    for e in sorted(wedges):
        if e not in used:
            v = min(mesh.edge_vertices[e])
            nodes.add(v)
            paths.append(walk(v, e))
    paths.sort(key=lambda p: min(p[0]))
    return nodes, paths


def build_wireframe(mesh, vsg):
    """Complete (unsimplified) wireframe: VSG edges plus traces from singular vertices."""
    irregular = mesh.irregular_mask()
    touches = [any(irregular[x] for x in mesh.vertex_edges[v]) for v in range(mesh.n_vertices)]
    singular = set(vsg.singular_vertices)
    wedges = set(vsg.edges())
    for v in sorted(singular):
        for e in sorted(mesh.vertex_edges[v]):
            if irregular[e] or e in wedges:
                continue
            wedges.update(_trace_from(mesh, v, e, singular, touches, irregular))
    nodes, paths = _segment(mesh, wedges, singular)
    segments = [Segment(i, tuple(es), tuple(vs), any(irregular[e] for e in es))
                for i, (es, vs) in enumerate(paths)]
    irr = {e for e in wedges if irregular[e]}
    nonhex = mesh.nonhex_edge_mask()
    return VsgWireframe(nodes, segments, singular, irr,
                        {e: int(mesh.edge_valence[e]) for e in irr},
                        {e for e in wedges if nonhex[e]})


def is_plain_corner(mesh, v):
    """Boundary vertex with exactly three boundary quads and only quads around it."""
    if not mesh.boundary_vertex[v]:
        return False
    faces = mesh.vertex_faces[v]
    if not all(mesh.is_quad(f) for f in faces):
        return False
    return sum(1 for f in faces if mesh.boundary_face[f]) == 3


def node_important(mesh, wf, v):
    return v in wf.singular_vertices and not is_plain_corner(mesh, v)


def pairable(mesh, ea, eb):
    """Two regular edges at a singular vertex can pair when they share no cell
    and every face around either edge is a quad."""
    if set(mesh.edge_cells[ea]).intersection(mesh.edge_cells[eb]):
        return False
    return all(mesh.is_quad(f) for f in mesh.edge_faces[ea] + mesh.edge_faces[eb])


def resolve_pairs(options):
    """Non-important segments from a pairing relation ``{seg: set(partners)}``.

    Mutual unique pairs are both dropped; a segment with several partners
    that each pair only with it is dropped together with its lowest-id
    partner; anything else is kept.
    """
    drop = set()
    for a in sorted(options):
        partners = options[a]
        if not partners:
            continue
        if all(options.get(b, set()) == {a} for b in partners):
            drop.add(a)
            drop.add(min(partners))
    return drop


def mark_non_important(wf, mesh):
    segs = [replace(s, important=True, reactivated=False) for s in wf.segments]
    ends = {}
    for s in segs:
        if s.is_irregular:
            continue
        v0, v1 = s.vertices[0], s.vertices[-1]
        if not node_important(mesh, wf, v0) and not node_important(mesh, wf, v1):
            s.important = False
        ends.setdefault(v0, []).append((s.id, s.edges[0]))
        if v1 != v0 or len(s.edges) > 1:
            ends.setdefault(v1, []).append((s.id, s.edges[-1]))
    for v in sorted(wf.singular_vertices):
        around = ends.get(v, [])
        options = {sid: set() for sid, _ in around}
        for (sa, ea), (sb, eb) in _pairs(around):
            if sa != sb and pairable(mesh, ea, eb):
                options[sa].add(sb)
                options[sb].add(sa)
        for sid in resolve_pairs(options):
            segs[sid].important = False
    return replace(wf, segments=segs)


def _pairs(items):
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            yield items[i], items[j]


def reactivate(wf, mesh):
    """Re-show hidden segments that touch an irregular edge off a singular vertex."""
    irregular = mesh.irregular_mask()
    segs = []
    for s in wf.segments:
        s = replace(s)
        if not s.is_irregular and not s.important:
            s.reactivated = any(
                v not in wf.singular_vertices and any(irregular[x] for x in mesh.vertex_edges[v])
                for v in s.vertices)
        segs.append(s)
    return replace(wf, segments=segs)


def assign_colors(mesh, chains, rho=DEFAULT_RHO):
    """Color classes for singularities; partial parallel pairs share a class.

    Chains ``i`` and ``j`` are partial parallel when the fractions of their
    edges having a parallel partner in the other chain both reach ``rho``.
    Classes are colored greedily (smallest first) so that vertex-adjacent
    classes differ.  Colors start at 1.
    """
    if not 0 < rho <= 1:
        raise ValueError("rho must lie in (0, 1]")
    owner = {e: i for i, s in enumerate(chains) for e in s.edges}
    hits = {}
    for i, s in enumerate(chains):
        for e in s.edges:
            for f in mesh.edge_faces[e]:
                o = mesh.opposite_edge_in_face(f, e)
                j = owner.get(o)
                if j is not None and j != i:
                    hits.setdefault((i, j), set()).add(e)
    pairs = set()
    for (i, j), ei in hits.items():
        if i < j:
            ej = hits.get((j, i), set())
            if min(len(ei) / len(chains[i]), len(ej) / len(chains[j])) >= rho:
                pairs.add((i, j))

    parent = list(range(len(chains)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in sorted(pairs):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    class_of = [find(i) for i in range(len(chains))]

    at_vertex = {}
    for i, s in enumerate(chains):
        for v in set(s.vertices):
            at_vertex.setdefault(v, set()).add(i)
    neighbours = {}
    for group in at_vertex.values():
        for i in group:
            for j in group:
                if class_of[i] != class_of[j]:
                    neighbours.setdefault(class_of[i], set()).add(class_of[j])
    sizes = {}
    for k in class_of:
        sizes[k] = sizes.get(k, 0) + 1
    color = {}
    for k in sorted(sizes, key=lambda k: (sizes[k], k)):
        taken = {color[n] for n in neighbours.get(k, ()) if n in color}
        c = 1
        while c in taken:
            c += 1
        color[k] = c
    return ColorAssignment(pairs, [color[class_of[i]] for i in range(len(chains))], rho, class_of)


def edge_distances(mesh, edges, sources):
    """Hop distance along ``edges`` (vertex-sharing steps) to the nearest source."""
    at = {}
    for e in edges:
        for v in mesh.edge_vertices[e]:
            at.setdefault(v, []).append(e)
    dist = {e: 0 for e in sources if e in edges}
    queue = deque(sorted(dist))
    while queue:
        e = queue.popleft()
        for v in mesh.edge_vertices[e]:
            for x in at[v]:
                if x not in dist:
                    dist[x] = dist[e] + 1
                    queue.append(x)
    return dist


def opacity_law(d, o_min=DEFAULT_OPACITY_MIN, lam=DEFAULT_OPACITY_LAMBDA):
    if d is None or math.isinf(d):
        return o_min
    return max(o_min, math.exp(-lam * d))


def assign_opacity(wf, mesh, o_min=DEFAULT_OPACITY_MIN, lam=DEFAULT_OPACITY_LAMBDA):
    if not 0 <= o_min < 1 or lam <= 0:
        raise ValueError("need 0 <= o_min < 1 and lambda > 0")
    kept = wf.retained_edges()
    sources = {e for e in kept if e in wf.irregular_edges or e in wf.nonhex_edges}
    dist = edge_distances(mesh, kept, sources)
    opacity = {}
    for e in sorted(kept):
        opacity[e] = 1.0 if e in wf.irregular_edges else opacity_law(dist.get(e), o_min, lam)
    return replace(wf, opacity=opacity)


def color_segments(wf, chains, colors):
    owner = {e: i for i, s in enumerate(chains) for e in s.edges}
    segs = []
    for s in wf.segments:
        cls = 0
        for e in s.edges:
            if e in owner:
                cls = colors.color_class[owner[e]]
                break
        segs.append(replace(s, color_class=cls))
    return replace(wf, segments=segs)


def vsg_wireframe(mesh, vsg=None, rho=DEFAULT_RHO, o_min=DEFAULT_OPACITY_MIN,
                  lam=DEFAULT_OPACITY_LAMBDA):
    """Full pipeline: VSG, complete wireframe, simplification, colors, opacity."""
    if vsg is None:
        vsg = extract_vsg(mesh)
    wf = build_wireframe(mesh, vsg)
    wf = reactivate(mark_non_important(wf, mesh), mesh)
    wf = color_segments(wf, vsg.singularities, assign_colors(mesh, vsg.singularities, rho))
    return assign_opacity(wf, mesh, o_min, lam)


def sheet_wireframe(mesh, sheet, **kw):
    """Wireframe of the submesh spanned by a sheet's cells and its non-hex
    neighbours, reported in the parent mesh's vertex/edge ids."""
    cells = set(sheet.cells) | set(sheet.adjacent_nonhex)
    sub, vmap, _ = submesh(mesh, cells)
    wf = vsg_wireframe(sub, **kw)

    def pe(e):
        a, b = sub.edge_vertices[e]
        return mesh.edge_between(int(vmap[a]), int(vmap[b]))

    segs = [replace(s, edges=tuple(pe(e) for e in s.edges),
                    vertices=tuple(int(vmap[v]) for v in s.vertices)) for s in wf.segments]
    return VsgWireframe(
        {int(vmap[v]) for v in wf.nodes}, segs, {int(vmap[v]) for v in wf.singular_vertices},
        {pe(e) for e in wf.irregular_edges}, {pe(e): n for e, n in wf.valence.items()},
        {pe(e) for e in wf.nonhex_edges}, {pe(e): o for e, o in wf.opacity.items()})
