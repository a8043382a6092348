import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hexstruct.errors import DanglingIndex, NonManifoldFace, OpenShell
from hexstruct.mesh import (HEX_FACES, WEDGE_FACES, build_mesh, cell_shells,
                            check_invariants, shell_from_corners, submesh)
from hexstruct.synth import synth_grid

from oracles import ekey, grid_valence_oracle, is_hex_oracle

CUBE = np.array([[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0],
                 [0, 0, 1], [1, 0, 1], [1, 1, 1], [0, 1, 1]], dtype=float)


def cube_mesh():
    return build_mesh([shell_from_corners(list(range(8)), HEX_FACES)], CUBE)


def test_single_cube():
    m = cube_mesh()
    assert (m.n_vertices, m.n_edges, m.n_faces, m.n_cells) == (8, 12, 6, 1)
    assert m.is_hex[0]
    assert list(m.edge_valence) == [1] * 12
    assert m.boundary_face.all() and m.boundary_edge.all()


def test_grid_222_counts_and_valence_oracle():
    m = synth_grid(2, 2, 2)
    assert (m.n_vertices, m.n_edges, m.n_faces, m.n_cells) == (27, 54, 36, 8)
    assert m.n_hex == 8
    oracle = grid_valence_oracle(2, 2, 2)
    got = {m.edge_vertices[e]: int(m.edge_valence[e]) for e in range(m.n_edges)}
    assert got == oracle
    assert sum(1 for v in got.values() if v == 4) == 6
    assert sum(1 for v in got.values() if v == 1) == 24


def test_cube_plus_prism():
    pts = np.vstack([CUBE, [[0, 0.5, 1.5], [1, 0.5, 1.5]]])
    shells = [shell_from_corners(list(range(8)), HEX_FACES),
              shell_from_corners([4, 7, 8, 5, 6, 9], WEDGE_FACES)]
    m = build_mesh(shells, pts)
    assert m.n_cells == 2
    assert list(m.is_hex) == [True, False]
    shared = [f for f in range(m.n_faces) if len(m.face_cells[f]) == 2]
    assert len(shared) == 1
    assert set(m.face_vertices[shared[0]]) == {4, 5, 6, 7}


def test_errors():
    shell = shell_from_corners(list(range(8)), HEX_FACES)
    with pytest.raises(DanglingIndex):
        build_mesh([shell], CUBE[:7])
    with pytest.raises(OpenShell):
        build_mesh([shell[:5]], CUBE)
    top = shell[1]
    pts = np.vstack([CUBE, CUBE + [0, 0, 1], CUBE + [0, 0, 2]])
    up = shell_from_corners([4, 5, 6, 7, 12, 13, 14, 15], HEX_FACES)
    third = shell_from_corners([4, 5, 6, 7, 20, 21, 22, 23], HEX_FACES)
    assert set(top) == {4, 5, 6, 7}
    with pytest.raises(NonManifoldFace):
        build_mesh([shell, up, third], pts)


def test_is_irregular_examples():
    m = synth_grid(3, 3, 3)
    center = m.edge_between(21, 37)     # (1,1,1)-(1,1,2): interior, valence 4
    assert m.edge_valence[center] == 4 and not m.is_irregular(center)
    corner = m.edge_between(0, 1)
    assert m.edge_valence[corner] == 1 and m.is_irregular(corner)
    side = m.edge_between(17, 18)       # (1,0,1)-(2,0,1) on the y=0 face
    assert m.boundary_edge[side] and m.edge_valence[side] == 2
    assert not m.is_irregular(side)


@pytest.mark.parametrize("shape", [(1, 1, 1), (2, 3, 1), (3, 3, 3)])
def test_invariants_hold(shape):
    m = synth_grid(*shape)
    assert check_invariants(m) == []
    # Sum of (2 - incident cells) over faces counts the boundary faces.
    assert sum(2 - len(cs) for cs in m.face_cells) == int(m.boundary_face.sum())
    assert all(is_hex_oracle(m, c) == m.is_hex[c] for c in range(m.n_cells))


def test_build_is_deterministic():
    a, b = synth_grid(2, 2, 2), synth_grid(2, 2, 2)
    assert a.face_vertices == b.face_vertices
    assert a.edge_vertices == b.edge_vertices
    assert a.cell_faces == b.cell_faces


def test_degenerate_geometry_still_hex():
    flat = CUBE.copy()
    flat[:, 2] = 0.0
    m = build_mesh([shell_from_corners(list(range(8)), HEX_FACES)], flat)
    assert m.is_hex[0]


def test_non_conforming_flag():
    # A hex under two wedges whose triangles do not match its top quad.
    pts = np.vstack([CUBE, CUBE[4:] + [0, 0, 1]])
    shells = [shell_from_corners(list(range(8)), HEX_FACES),
              shell_from_corners([4, 5, 6, 8, 9, 10], WEDGE_FACES),
              shell_from_corners([4, 6, 7, 8, 10, 11], WEDGE_FACES)]
    m = build_mesh(shells, pts)
    assert m.non_conforming
    assert not synth_grid(2, 2, 2).non_conforming


def test_submesh_maps_back():
    m = synth_grid(3, 2, 1)
    sub, vmap, cmap = submesh(m, [1, 2])
    assert sub.n_cells == 2 and list(cmap) == [1, 2]
    for e in range(sub.n_edges):
        a, b = sub.edge_vertices[e]
        assert m.edge_between(int(vmap[a]), int(vmap[b])) is not None


def test_hex_corner_order_round_trip():
    m = synth_grid(2, 1, 1)
    for c in m.hex_cells():
        order = m.hex_corner_order(c)
        again = build_mesh([shell_from_corners(order, HEX_FACES)], m.positions)
        assert again.is_hex[0]
        assert {frozenset(l) for l in cell_shells(again)[0]} == \
            {frozenset(m.face_vertices[f]) for f in m.cell_faces[c]}


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
def test_grid_valence_matches_oracle(nx, ny, nz):
    m = synth_grid(nx, ny, nz)
    oracle = grid_valence_oracle(nx, ny, nz)
    assert {m.edge_vertices[e]: int(m.edge_valence[e]) for e in range(m.n_edges)} == oracle
    assert check_invariants(m) == []


def test_edge_keys_sorted():
    m = synth_grid(1, 1, 1)
    assert all(ekey(*k) == k for k in m.edge_vertices)
