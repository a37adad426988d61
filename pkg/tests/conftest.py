from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from branchforge import geometries as geo


@pytest.fixture(scope="session")
def corpus():
    """Every generator family member used by the acceptance criteria."""
    return {
        "P2": geo.projective_levi(2),
        "P3": geo.projective_levi(3),
        "P4": geo.projective_levi(4),
        "A2": geo.affine_levi(2),
        "A3": geo.affine_levi(3),
        "B2": geo.biaffine_levi(2),
        "B3": geo.biaffine_levi(3),
        "B4": geo.biaffine_levi(4),
        "TD33": geo.transversal_design_levi(3, 3),
        "TD44": geo.transversal_design_levi(4, 4),
        "GQ2": geo.symplectic_gq_levi(2),
    }
