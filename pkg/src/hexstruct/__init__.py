"""Structure analysis for hex-dominant meshes: singularity graphs, hybrid
base complexes, sheets and simplified singularity wireframes."""
from .base_complex import extract_base_complex, partition_components, trace_frame
from .errors import *  # noqa: F401,F403
from .io import (RawMesh, SceneExport, read_medit, read_mesh, read_vtk_legacy,
                 write_report, write_vtk_export, write_vtk_mesh)
from .mesh import HexDominantMesh, build_mesh, check_invariants, submesh
from .report import StructureReport, analyze_mesh
from .sheets import classify_sheet, decompose_sheet, extract_sheets
from .singularity import extract_hybrid_singularity_graph, extract_vsg
from .synth import synth_grid, synth_inject_nonhex
from .wireframe import assign_colors, assign_opacity, sheet_wireframe, vsg_wireframe

__version__ = "0.1.0"
