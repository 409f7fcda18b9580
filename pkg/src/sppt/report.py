"""One-shot analysis of a state: PPT, SPPT along the canonical factor, realignment."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .bipartite import BipartiteState, PptStatus, ppt_status, realignment_value
from .factor import NotRepresentable, is_sppt_state
from .matrix_core import DEFAULT_TOL, Tolerance


@dataclass(frozen=True)
class VerdictReport:
    dims: tuple[int, int]
    ppt: PptStatus
    min_eig_pt: float
    representable: bool
    is_sppt: bool
    max_defect: Optional[float]
    condition_residuals: dict[tuple[int, int], float] = field(default_factory=dict)
    not_representable_block: Optional[tuple[int, int]] = None
    realignment_value: float = 0.0
    realignment_tol: float = DEFAULT_TOL.residual_tol

    @property
    def is_ppt(self) -> bool:
        return self.ppt.is_ppt

    @property
    def realignment_entangled(self) -> bool:
        return self.realignment_value > 1.0 + self.realignment_tol

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "ppt": self.ppt.value,
            "min_eig_pt": self.min_eig_pt,
            "sppt": self.is_sppt,
            "representable": self.representable,
            "max_defect": self.max_defect,
            "condition_residuals": [
                {"i": i + 1, "j": j + 1, "residual": r} for (i, j), r in sorted(self.condition_residuals.items())
            ],
            "not_representable_block": (
                None if self.not_representable_block is None else [k + 1 for k in self.not_representable_block]
            ),
            "realignment_value": self.realignment_value,
            "realignment_entangled": self.realignment_entangled,
        }

    def summary(self) -> str:
        yes = {True: "yes", False: "no"}
        real = ">1" if self.realignment_entangled else "<= 1"
        return f"PPT: {yes[self.is_ppt]}, SPPT: {yes[self.is_sppt]}, realignment: {real}"


def analyze(s: BipartiteState, tol: Tolerance = DEFAULT_TOL) -> VerdictReport:
    s = s.normalize()
    status, lo = ppt_status(s, tol)
    value = realignment_value(s)
    try:
        v = is_sppt_state(s, tol)
    except NotRepresentable as exc:
        return VerdictReport(
            dims=(s.dim_a, s.dim_b),
            ppt=status,
            min_eig_pt=lo,
            representable=False,
            is_sppt=False,
            max_defect=None,
            not_representable_block=(exc.i, exc.j),
            realignment_value=value,
            realignment_tol=tol.residual_tol,
        )
    return VerdictReport(
        dims=(s.dim_a, s.dim_b),
        ppt=status,
        min_eig_pt=lo,
        representable=True,
        is_sppt=v.is_sppt,
        max_defect=v.max_defect,
        condition_residuals=v.condition_residuals,
        realignment_value=value,
        realignment_tol=tol.residual_tol,
    )
