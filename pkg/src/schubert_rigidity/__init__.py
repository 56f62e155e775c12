"""Schubert cells of compact Hermitian symmetric spaces.

Classification by (a, J), first-order rigidity through the H1/H2 root conditions
and harmonic Lie algebra cohomology, and the exterior-algebra Schur test.
"""

from __future__ import annotations

from .hasse import CHSS, HasseElement, delta_from_word, dual, enumerate_hasse, get_chss
from .rigidity import hplus_elements, verdict
from .roots import LieType
from .schubert import classify, schubert_from_aJ
from .schur import schur_equal, triviality_filter

__version__ = "0.1.0"

__all__ = [
    "CHSS", "HasseElement", "LieType", "classify", "delta_from_word", "dual", "enumerate_hasse",
    "get_chss", "hplus_elements", "schubert_from_aJ", "schur_equal", "triviality_filter", "verdict",
]
