"""Injecting non-hex cells into a grid and watching the base complex react.

Each non-hex cell becomes its own component. Its edges are pseudo-singularities
that seed separation surfaces, so the hex part is cut into more blocks.
"""
from hexstruct import analyze_mesh, synth_grid, synth_inject_nonhex

base = analyze_mesh(synth_grid(3, 3, 2), name="grid").report
print(f"{'recipe':<14}{'|C|':>5}{'hex%':>7}{'|C_B|':>7}{'hex blocks':>12}{'pseudo':>8}")
print(f"{'none':<14}{base.n_cells:>5}{base.hex_ratio:>7.2f}{base.n_components:>7}")
for recipe in ("split_hex", "glue_prism", "glue_pyramid", "y_junction"):
    m = synth_inject_nonhex(synth_grid(3, 3, 2), recipe)
    a = analyze_mesh(m, name=recipe)
    bc = a.complex
    print(f"{recipe:<14}{m.n_cells:>5}{a.report.hex_ratio:>7.2f}{bc.n_components:>7}"
          f"{bc.n_hex_components:>12}{len(a.hsg.pseudo_singularities):>8}")
    assert bc.n_nonhex_components == len(m.nonhex_cells())
