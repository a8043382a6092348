import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE = []

from hexstruct.synth import (synth_grid, synth_inject_nonhex, synth_spiral,  # noqa: E402
                             synth_twisted_ring, synth_wrapped_prism)


def fixture_suite():
    """Small meshes (at most 100 cells) covering every recipe and fixture."""
    return {
        "grid2": synth_grid(2, 2, 2),
        "grid3": synth_grid(3, 3, 3),
        "grid112": synth_grid(1, 1, 2),
        "split_hex": synth_inject_nonhex(synth_grid(1, 1, 1), "split_hex"),
        "split_column": synth_inject_nonhex(synth_grid(3, 3, 2), "split_hex", i=1, j=1),
        "glue_prism": synth_inject_nonhex(synth_grid(2, 2, 1), "glue_prism"),
        "glue_prism_mid": synth_inject_nonhex(synth_grid(3, 3, 2), "glue_prism", i=1, j=1),
        "glue_pyramid": synth_inject_nonhex(synth_grid(3, 3, 2), "glue_pyramid", i=1, j=1),
        "y_junction": synth_inject_nonhex(synth_grid(4, 3, 2), "y_junction"),
        "twisted_ring": synth_twisted_ring(),
        "twisted_ring6": synth_twisted_ring(6, quarter_turns=1),
        "spiral": synth_spiral(),
        "wrapped_prism": synth_wrapped_prism(),
        "wrapped_prism2": synth_wrapped_prism(layers=2),
    }


@pytest.fixture(scope="session")
def suite():
    return fixture_suite()


def periodic_grid(n=3, copies=1):
    """``n^3`` hexes with all three axes wrapped: no boundary, every edge valence 4."""
    import numpy as np
    from hexstruct.mesh import HEX_FACES, build_mesh, shell_from_corners

    vid = lambda i, j, k: (i % n) + n * ((j % n) + n * (k % n))
    shells = []
    for copy in range(copies):
        off = copy * n ** 3
        for k in range(n):
            for j in range(n):
                for i in range(n):
                    c = [vid(i, j, k), vid(i + 1, j, k), vid(i + 1, j + 1, k), vid(i, j + 1, k),
                         vid(i, j, k + 1), vid(i + 1, j, k + 1), vid(i + 1, j + 1, k + 1),
                         vid(i, j + 1, k + 1)]
                    shells.append(shell_from_corners([off + x for x in c], HEX_FACES))
    pts = np.random.default_rng(0).random((copies * n ** 3, 3))
    return build_mesh(shells, pts)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
