"""Brute-force reference implementations used to check the library.

These deliberately avoid the library's adjacency tables: they work from
face vertex loops and cell face lists only, and enumerate instead of
propagating.
"""
from itertools import combinations


def ekey(a, b):
    return (a, b) if a < b else (b, a)


def cell_edge_keys(mesh, c):
    out = set()
    for f in mesh.cell_faces[c]:
        loop = mesh.face_vertices[f]
        for i in range(len(loop)):
            out.add(ekey(loop[i], loop[(i + 1) % len(loop)]))
    return out


def cell_face_keys(mesh, c):
    return {frozenset(mesh.face_vertices[f]) for f in mesh.cell_faces[c]}


def is_hex_oracle(mesh, c):
    loops = [mesh.face_vertices[f] for f in mesh.cell_faces[c]]
    verts = {v for loop in loops for v in loop}
    return len(loops) == 6 and all(len(l) == 4 for l in loops) and len(verts) == 8


def grid_valence_oracle(nx, ny, nz):
    """Valence of every unit edge of a structured grid, by counting the cubes
    that contain it (geometric enumeration, no mesh involved)."""
    vid = lambda i, j, k: i + (nx + 1) * (j + (ny + 1) * k)
    out = {}
    dims = (nx, ny, nz)
    for k in range(nz + 1):
        for j in range(ny + 1):
            for i in range(nx + 1):
                p = (i, j, k)
                for axis in range(3):
                    q = list(p)
                    q[axis] += 1
                    if q[axis] > dims[axis]:
                        continue
                    others = [a for a in range(3) if a != axis]
                    count = 0
                    for d0 in (-1, 0):
                        for d1 in (-1, 0):
                            cube = list(p)
                            cube[others[0]] += d0
                            cube[others[1]] += d1
                            if all(0 <= cube[a] < dims[a] for a in range(3)):
                                count += 1
                    out[ekey(vid(*p), vid(*q))] = count
    return out


def opposite_pairs(mesh, hex_only=True):
    """All (edge, edge) key pairs that are opposite in some quad face."""
    pairs = set()
    for c in range(mesh.n_cells):
        if hex_only and not is_hex_oracle(mesh, c):
            continue
        for f in mesh.cell_faces[c]:
            loop = mesh.face_vertices[f]
            if len(loop) != 4:
                continue
            a, b, cc, d = loop
            pairs.add((ekey(a, b), ekey(cc, d)))
            pairs.add((ekey(b, cc), ekey(d, a)))
    return pairs


def sheets_oracle(mesh):
    """Parallel classes (as sets of edge keys) over quad faces of hex cells."""
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in opposite_pairs(mesh):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups = {}
    for c in range(mesh.n_cells):
        if is_hex_oracle(mesh, c):
            for e in cell_edge_keys(mesh, c):
                groups.setdefault(find(e), set()).add(e)
    return {frozenset(g) for g in groups.values()}


def classify_oracle(mesh, edge_keys):
    """Enumerate every vertex-sharing pair of the parallel set and classify it.

    Returns (t1, t2, t3, unmatched vertex set).
    """
    cells = range(mesh.n_cells)
    cedges = {c: cell_edge_keys(mesh, c) for c in cells}
    cfaces = {c: cell_face_keys(mesh, c) for c in cells}
    hexes = {c for c in cells if is_hex_oracle(mesh, c)}
    t1 = t2 = t3 = False
    unmatched = set()
    for ei, ej in combinations(sorted(edge_keys), 2):
        shared = set(ei) & set(ej)
        if not shared:
            continue
        unmatched |= shared
        holders_i = {c for c in cells if ei in cedges[c]}
        holders_j = {c for c in cells if ej in cedges[c]}
        if any(c not in hexes for c in holders_i | holders_j):
            t1 = True
        common = holders_i & holders_j & hexes
        if common:
            t3 = True
        else:
            for a in holders_i & hexes:
                for b in holders_j & hexes:
                    if a != b and cfaces[a] & cfaces[b]:
                        t2 = True
    return t1, t2, t3, unmatched


def parallel_ratio_oracle(mesh, chain_i, chain_j):
    """min(|E_i|/|s_i|, |E_j|/|s_j|) by enumerating all edge pairs."""
    pairs = opposite_pairs(mesh, hex_only=False)
    keys_i = [mesh.edge_vertices[e] for e in chain_i]
    keys_j = [mesh.edge_vertices[e] for e in chain_j]
    ei = {a for a in keys_i for b in keys_j if (a, b) in pairs or (b, a) in pairs}
    ej = {b for a in keys_i for b in keys_j if (a, b) in pairs or (b, a) in pairs}
    return min(len(ei) / len(keys_i), len(ej) / len(keys_j))


def components_oracle(mesh, frame_faces):
    """Connected cell groups: hexes joined across non-frame faces, non-hexes alone."""
    key_of = {f: frozenset(mesh.face_vertices[f]) for f in range(mesh.n_faces)}
    frame_keys = {key_of[f] for f in frame_faces}
    hexes = [c for c in range(mesh.n_cells) if is_hex_oracle(mesh, c)]
    label = {c: c for c in range(mesh.n_cells)}
    changed = True
    while changed:
        changed = False
        for a, b in combinations(hexes, 2):
            common = cell_face_keys(mesh, a) & cell_face_keys(mesh, b)
            if common and not common & frame_keys and label[a] != label[b]:
                low = min(label[a], label[b])
                label[a] = label[b] = low
                changed = True
    groups = {}
    for c, l in label.items():
        groups.setdefault(l, set()).add(c)
    return sorted(sorted(g) for g in groups.values())
