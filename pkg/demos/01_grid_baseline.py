"""A structured grid has the simplest possible structure.

Every boundary crease is an irregular edge, there are no pseudo-singularities,
the base complex is one block and each axis contributes n parallel sheets.
"""
from hexstruct import analyze_mesh, synth_grid

for n in (2, 3, 4):
    a = analyze_mesh(synth_grid(n, n, n), name=f"grid{n}")
    r = a.report
    print(f"grid {n}^3: |C|={r.n_cells} |C_B|={r.n_components} sheets={r.n_sheets} "
          f"singularities={len(a.hsg.singularities)} pseudo={len(a.hsg.pseudo_singularities)}")

# the wireframe is just the twelve box edges, each an irregular chain of n edges
wf = analyze_mesh(synth_grid(3, 3, 3)).wireframe
print("wireframe segment lengths:", sorted(len(s.edges) for s in wf.segments))
