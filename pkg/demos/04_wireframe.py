"""Simplified wireframe with colors and opacity, written out as VTK.

Open the files in ParaView and color the lines by color_class, using opacity
as the alpha channel.
"""
import sys
from collections import Counter
from pathlib import Path

from hexstruct import analyze_mesh, synth_grid, synth_inject_nonhex
from hexstruct.io import wireframe_export, write_vtk_export

out = Path(sys.argv[1] if len(sys.argv) > 1 else "wireframe_out")
out.mkdir(exist_ok=True)

m = synth_inject_nonhex(synth_grid(4, 3, 2), "y_junction")
wf = analyze_mesh(m).wireframe
kept = wf.retained_segments()
print(f"{len(wf.segments)} segments, {len(kept)} retained, "
      f"{sum(s.reactivated for s in kept)} reactivated")
print("segments per color class:", dict(sorted(Counter(s.color_class for s in kept).items())))
print("opacity range:", min(wf.opacity.values()), "to", max(wf.opacity.values()))

path = out / "y_junction_wireframe.vtk"
path.write_bytes(write_vtk_export(m, wireframe_export(m, wf)))
print("wrote", path)
