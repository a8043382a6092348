"""Synthetic hex-dominant meshes used as fixtures and demos.

``synth_grid`` builds structured hex blocks; ``synth_inject_nonhex`` applies
a named mutation to such a grid.  The remaining builders produce small
hand-designed configurations with known sheet types.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import UnsupportedRecipe
from .mesh import (HEX_FACES, PYRAMID_FACES, WEDGE_FACES, build_mesh,
                   shell_from_corners)

RECIPES = ("split_hex", "glue_prism", "glue_pyramid", "y_junction")
FIXTURES = ("twisted_ring", "spiral", "wrapped_prism")


def _grid_vid(shape, i, j, k):
    nx, ny, _ = shape
    return i + (nx + 1) * (j + (ny + 1) * k)


def _grid_positions(shape):
    nx, ny, nz = shape
    k, j, i = np.meshgrid(np.arange(nz + 1), np.arange(ny + 1), np.arange(nx + 1), indexing="ij")
    return np.column_stack([i.ravel(), j.ravel(), k.ravel()]).astype(float)


def _hex_corners(shape, i, j, k):
    v = lambda a, b, c: _grid_vid(shape, a, b, c)
    return [v(i, j, k), v(i + 1, j, k), v(i + 1, j + 1, k), v(i, j + 1, k),
            v(i, j, k + 1), v(i + 1, j, k + 1), v(i + 1, j + 1, k + 1), v(i, j + 1, k + 1)]


def _grid_cells(shape):
    nx, ny, nz = shape
    cells = {}
    for k in range(nz):
        for j in range(ny):
            for i in range(nx):
                cells[(i, j, k)] = ("hex", _hex_corners(shape, i, j, k))
    return cells


_TEMPLATES = {"hex": HEX_FACES, "wedge": WEDGE_FACES, "pyramid": PYRAMID_FACES}


def _assemble(typed_cells, positions, compact=False, meta=None):
    positions = np.asarray(positions, dtype=float)
    if compact:
        used = sorted({v for _, corners in typed_cells for v in corners})
        remap = {v: n for n, v in enumerate(used)}
        typed_cells = [(t, [remap[v] for v in corners]) for t, corners in typed_cells]
        positions = positions[used]
    shells = [shell_from_corners(corners, _TEMPLATES[t]) for t, corners in typed_cells]
    mesh = build_mesh(shells, positions)
    mesh.meta.update(meta or {})
    mesh.meta["cell_types"] = [t for t, _ in typed_cells]
    return mesh


def synth_grid(nx, ny, nz):
    """Structured block of ``nx * ny * nz`` unit hexahedra."""
    if min(nx, ny, nz) < 1:
        raise ValueError("grid dimensions must be >= 1")
    shape = (int(nx), int(ny), int(nz))
    cells = _grid_cells(shape)
    return _assemble(list(cells.values()), _grid_positions(shape), meta={"grid_shape": shape})


def synth_inject_nonhex(grid, recipe, **params):
    """Return a new mesh with non-hex cells injected into a ``synth_grid``.

    Recipes:

    ``split_hex``
        Split the hex column at ``(i, j)`` into two wedges per layer along
        the diagonal of its xy footprint.
    ``glue_prism`` / ``glue_pyramid``
        Glue a wedge (ridge along x) or pyramid onto the top quad of column
        ``(i, j)``.
    ``y_junction``
        Replace the hex pair at columns ``i, i+1`` of row 0 by three wedges
        per layer meeting at a common vertical edge; the bottom side of the
        pair must lie on the boundary, so the midpoint column is dropped.
    """
    shape = grid.meta.get("grid_shape")
    if shape is None:
        raise UnsupportedRecipe("recipes apply only to meshes built by synth_grid")
    if recipe not in RECIPES:
        raise UnsupportedRecipe(f"unknown recipe {recipe!r}; expected one of {RECIPES}")
    nx, ny, nz = shape
    cells = _grid_cells(shape)
    positions = _grid_positions(shape)
    v = lambda a, b, c: _grid_vid(shape, a, b, c)
    meta = {"grid_shape": shape, "recipe": recipe}

    if recipe == "split_hex":
        i, j = params.get("i", 0), params.get("j", 0)
        for k in range(nz):
            c = cells.pop((i, j, k))[1]
            cells[(i, j, k, "a")] = ("wedge", [c[0], c[1], c[2], c[4], c[5], c[6]])
            cells[(i, j, k, "b")] = ("wedge", [c[0], c[2], c[3], c[4], c[6], c[7]])
        return _assemble(list(cells.values()), positions, meta=meta)

    if recipe in ("glue_prism", "glue_pyramid"):
        i, j = params.get("i", 0), params.get("j", 0)
        a, b, c, d = v(i, j, nz), v(i + 1, j, nz), v(i + 1, j + 1, nz), v(i, j + 1, nz)
        base = len(positions)
        if recipe == "glue_prism":
            extra = np.array([[i, j + 0.5, nz + 0.5], [i + 1, j + 0.5, nz + 0.5]])
            new = ("wedge", [a, d, base, b, c, base + 1])
        else:
            extra = np.array([[i + 0.5, j + 0.5, nz + 0.5]])
            new = ("pyramid", [a, b, c, d, base])
        cells["glued"] = new
        return _assemble(list(cells.values()), np.vstack([positions, extra]), meta=meta)

    # y_junction
    i = params.get("i", max(0, (nx - 2) // 2))
    if nx < i + 2 or ny < 1:
        raise UnsupportedRecipe("y_junction needs two columns of room along x")
    for k in range(nz):
        cells.pop((i, 0, k))
        cells.pop((i + 1, 0, k))
        A, B, C = v(i, 0, k), v(i + 2, 0, k), v(i + 2, 1, k)
        N, D = v(i + 1, 1, k), v(i, 1, k)
        A2, B2, C2 = v(i, 0, k + 1), v(i + 2, 0, k + 1), v(i + 2, 1, k + 1)
        N2, D2 = v(i + 1, 1, k + 1), v(i, 1, k + 1)
        cells[(i, 0, k, "y0")] = ("wedge", [A, B, N, A2, B2, N2])
        cells[(i, 0, k, "y1")] = ("wedge", [B, C, N, B2, C2, N2])
        cells[(i, 0, k, "y2")] = ("wedge", [A, N, D, A2, N2, D2])
    return _assemble(list(cells.values()), positions, compact=True, meta=meta)


def synth_twisted_ring(n=4, quarter_turns=1, radius=3.0):
    """Closed ring of ``n`` hexes whose cross-section turns by 90 degrees.

    The twist merges two of the three parallel-edge families into one
    sheet that passes through every cell twice: a self-intersecting sheet
    that splits into two perfect subsheets.
    """
    if n < 3:
        raise ValueError("a ring needs at least 3 cells")
    pts = []
    for k in range(n):
        theta = 2 * math.pi * k / n
        radial = np.array([math.cos(theta), math.sin(theta), 0.0])
        center = radius * radial
        phi = quarter_turns * (math.pi / 2) * k / n
        for j in range(4):
            psi = math.pi / 4 + j * math.pi / 2 + phi
            pts.append(center + 0.7 * (math.cos(psi) * radial + math.sin(psi) * np.array([0, 0, 1.0])))
    cells = []
    for k in range(n):
        bottom = [4 * k + j for j in range(4)]
        if k + 1 < n:
            top = [4 * (k + 1) + j for j in range(4)]
        else:
            top = [(j + quarter_turns) % 4 for j in range(4)]
        cells.append(("hex", bottom + top))
    return _assemble(cells, np.array(pts), meta={"fixture": "twisted_ring"})


def _extrude(quads_and_tris, pts2d, layers=1):
    nv = len(pts2d)
    pts = np.array([[x, y, float(l)] for l in range(layers + 1) for x, y in pts2d])
    cells = []
    for l in range(layers):
        lo, hi = l * nv, (l + 1) * nv
        for poly in quads_and_tris:
            corners = [lo + p for p in poly] + [hi + p for p in poly]
            cells.append(("hex" if len(poly) == 4 else "wedge", corners))
    return cells, pts


def synth_spiral(per_turn=6, n_quads=9, layers=1):
    """Strip of hexes wound as a spiral so later turns rest on earlier ones.

    The strip's sheet touches itself across the contact surface, giving
    vertex-sharing parallel edges in face-adjacent hexes (self-parallel).
    """
    if n_quads <= per_turn:
        raise ValueError("need more quads than one turn for self-contact")
    n2 = n_quads + per_turn + 1
    pts2d = []
    for j in range(n2):
        a = 2 * math.pi * j / per_turn
        r = 1.0 + j / per_turn
        pts2d.append((r * math.cos(a), r * math.sin(a)))
    quads = [(k, k + per_turn, k + per_turn + 1, k + 1) for k in range(n_quads)]
    cells, pts = _extrude(quads, pts2d, layers)
    return _assemble(cells, pts, meta={"fixture": "spiral"})


def synth_wrapped_prism(layers=1):
    """A wedge whose two side faces are joined by one strip of hexes.

    The strip leaves the wedge through one quad side, wraps around a filler
    hex and re-enters through the adjacent side, so its parallel edges meet
    at a vertex of the wedge.
    """
    polar = lambda deg, r: (r * math.cos(math.radians(deg)), r * math.sin(math.radians(deg)))
    # A, B, C, P1, P2, P3, Q1, Q2, Q3
    pts2d = [(0.0, 0.0), polar(45, 1), polar(135, 1), polar(-45, 1), polar(-90, 1.2),
             polar(-135, 1), polar(0, 2), polar(-90, 2.2), polar(180, 2)]
    A, B, C, P1, P2, P3, Q1, Q2, Q3 = range(9)
    polys = [(A, B, C), (A, B, Q1, P1), (P1, Q1, Q2, P2), (P2, Q2, Q3, P3),
             (P3, Q3, C, A), (A, P1, P2, P3)]
    cells, pts = _extrude(polys, pts2d, layers)
    return _assemble(cells, pts, meta={"fixture": "wrapped_prism"})


def synth_fixture(name, **params):
    builders = {"twisted_ring": synth_twisted_ring, "spiral": synth_spiral,
                "wrapped_prism": synth_wrapped_prism}
    if name not in builders:
        raise UnsupportedRecipe(f"unknown fixture {name!r}; expected one of {FIXTURES}")
    return builders[name](**params)


def synth_mesh(grid=None, recipe=None):
    """Resolve a CLI-style request: a grid size and/or a recipe/fixture name."""
    if recipe in FIXTURES:
        return synth_fixture(recipe)
    n = grid or 3
    mesh = synth_grid(n, n, n)
    if recipe:
        mesh = synth_inject_nonhex(mesh, recipe)
    return mesh
