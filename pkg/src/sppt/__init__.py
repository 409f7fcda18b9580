"""Bipartite states with strong positive partial transpose (SPPT)."""

from .bipartite import (
    BipartiteState,
    PptStatus,
    from_matrix,
    is_ppt,
    partial_transpose_a,
    realign,
    realignment_value,
)
from .factor import (
    NotRepresentable,
    SpptFactor,
    SpptVerdict,
    assemble_state,
    canonical_factorize,
    is_sppt_state,
    sample_commuting_factor,
    sample_hermitian_factor,
    sppt_verdict,
)
from .matrix_core import Tolerance

__all__ = [
    "BipartiteState",
    "NotRepresentable",
    "PptStatus",
    "SpptFactor",
    "SpptVerdict",
    "Tolerance",
    "assemble_state",
    "canonical_factorize",
    "from_matrix",
    "is_ppt",
    "is_sppt_state",
    "partial_transpose_a",
    "realign",
    "realignment_value",
    "sample_commuting_factor",
    "sample_hermitian_factor",
    "sppt_verdict",
]
