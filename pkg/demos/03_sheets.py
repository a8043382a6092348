"""Sheet extraction, classification and decomposition on small fixtures.

The spiral folds a sheet back against itself (t2), the wrapped prism makes a
sheet touch itself inside one cell (t1) and the twisted ring makes a sheet
cross itself (t3). Only the t3 sheet needs to be split into subsheets.
"""
from hexstruct import decompose_sheet, extract_sheets
from hexstruct.synth import synth_spiral, synth_twisted_ring, synth_wrapped_prism

for name, m in [("spiral", synth_spiral()), ("wrapped_prism", synth_wrapped_prism()),
                ("twisted_ring", synth_twisted_ring())]:
    sheets = extract_sheets(m)
    print(f"{name}: {len(sheets)} sheets")
    for s in sheets:
        if s.perfect:
            continue
        print(f"  sheet {s.id}: {len(s.cells)} cells, flags={sorted(s.flags)}, "
              f"unmatched vertices={len(s.unmatched_vertices)}")
        if s.t3:
            for sub in decompose_sheet(m, s):
                print(f"    subsheet {sub.id}: {len(sub.cells)} cells, perfect={sub.perfect}")
