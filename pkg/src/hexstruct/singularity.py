"""Singularity structures: the hybrid singularity graph and the VSG.

Both graphs group irregular edges into maximal chains of uniform valence.
They differ in how non-hex cells are treated: the hybrid graph turns every
edge of a non-hex cell into its own pseudo-singularity and forbids chains
from passing through such edges' endpoints, while the valence-based graph
(VSG) simply keeps every irregular edge, non-hex or not.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Singularity:
    edges: tuple
    vertices: tuple     # ordered path; first == last for closed chains
    valence: int
    boundary: bool
    closed: bool = False

    @property
    def endpoints(self):
        return () if self.closed else (self.vertices[0], self.vertices[-1])

    def __len__(self):
        return len(self.edges)


@dataclass
class HybridSingularityGraph:
    singularities: list
    pseudo_singularities: list          # single edge ids
    singular_vertices: set
    pseudo_singular_vertices: set

    def singular_edges(self):
        return {e for s in self.singularities for e in s.edges}

    def frame_edges(self):
        return self.singular_edges() | set(self.pseudo_singularities)


@dataclass
class ValenceSingularityGraph:
    singularities: list
    singular_vertices: set = field(default_factory=set)

    def edges(self):
        return {e for s in self.singularities for e in s.edges}

    def edge_to_chain(self):
        return {e: i for i, s in enumerate(self.singularities) for e in s.edges}


def _edge_key(mesh, e):
    return int(mesh.edge_valence[e]), bool(mesh.boundary_edge[e])


def chain_edges(mesh, edges, stop_vertices=()):
    """Partition ``edges`` into maximal chains of equal (valence, boundary class).

    A chain passes through vertex ``v`` only when exactly two edges of its
    class meet there and ``v`` is not a stop vertex; three or more such
    edges make ``v`` a branch point that ends every chain touching it.
    """
    eset = set(int(e) for e in edges)
    stops = set(stop_vertices)
    keys = {e: _edge_key(mesh, e) for e in eset}

    def step(e, v):
        if v in stops:
            return None
        same = [x for x in mesh.vertex_edges[v] if x in eset and keys[x] == keys[e]]
        if len(same) != 2:
            return None
        return same[0] if same[1] == e else same[1]

    def walk(e, v, member):
        path_e, path_v = [], []
        cur = e
        while True:
            nxt = step(cur, v)
            if nxt is None or nxt in member:
                return path_e, path_v, nxt == e
            member.add(nxt)
            path_e.append(nxt)
            v = mesh.other_vertex(nxt, v)
            path_v.append(v)
            cur = nxt

    seen = set()
    chains = []
    for e in sorted(eset):
        if e in seen:
            continue
        a, b = mesh.edge_vertices[e]
        member = {e}
        fe, fv, closed = walk(e, b, member)
        if closed:
            es, vs = [e] + fe, [a, b] + fv
        else:
            be, bv, _ = walk(e, a, member)
            es = be[::-1] + [e] + fe
            vs = bv[::-1] + [a, b] + fv
        seen.update(es)
        if not closed and es[0] > es[-1]:
            es, vs = es[::-1], vs[::-1]
        valence, boundary = keys[e]
        chains.append(Singularity(tuple(es), tuple(vs), valence, boundary, closed))
    return chains


def extract_hybrid_singularity_graph(mesh):
    """Singularities from hex-only irregular edges plus one pseudo-singularity
    per edge of a non-hex cell."""
    nonhex = mesh.nonhex_edge_mask()
    pseudo = [int(e) for e in np.flatnonzero(nonhex)]
    pseudo_vertices = {v for e in pseudo for v in mesh.edge_vertices[e]}
    candidates = np.flatnonzero(mesh.irregular_mask() & ~nonhex)
    chains = chain_edges(mesh, candidates, stop_vertices=pseudo_vertices)
    singular = {v for s in chains for v in s.endpoints} - pseudo_vertices
    return HybridSingularityGraph(chains, pseudo, singular, pseudo_vertices)


def extract_vsg(mesh):
    """Valence-based singularity graph: every irregular edge, chained by valence."""
    chains = chain_edges(mesh, np.flatnonzero(mesh.irregular_mask()))
    singular = {v for s in chains for v in s.endpoints}
    return ValenceSingularityGraph(chains, singular)
