"""Randomized test of the conjecture that SPPT states are separable.

Each sample draws an SPPT factor from a derived seed, assembles the state and
records its SPPT defect, the smallest eigenvalue of its partial transpose and
its realignment value. A realignment value above 1 + residual_tol would be a
counterexample candidate; its seed is enough to reproduce it.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .bipartite import is_ppt, realignment_value
from .factor import SAMPLERS, assemble_state, sppt_verdict
from .matrix_core import DEFAULT_TOL, DimensionMismatch, Tolerance

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master: int, index: int) -> int:
    """Per-sample seed mixed from the master seed and the sample index."""
    return splitmix64((splitmix64(master & MASK64) + index) & MASK64)


@dataclass(frozen=True)
class SampleRecord:
    index: int
    seed: int
    min_eig_pt: float
    realignment_value: float
    sppt_defect: float
    is_sppt: bool


@dataclass(frozen=True)
class HarnessReport:
    sample_count: int
    dims: tuple[int, int]
    sampler_id: str
    master_seed: int
    residual_tol: float
    records: tuple[SampleRecord, ...]

    @property
    def max_realignment(self) -> float:
        return max(r.realignment_value for r in self.records)

    @property
    def min_eigenvalue(self) -> float:
        return min(r.min_eig_pt for r in self.records)

    @property
    def violations(self) -> tuple[SampleRecord, ...]:
        return tuple(r for r in self.records if r.realignment_value > 1.0 + self.residual_tol)

    @property
    def sppt_failures(self) -> tuple[SampleRecord, ...]:
        return tuple(r for r in self.records if not r.is_sppt)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.sppt_failures

    def to_json(self) -> dict:
        return {
            "sample_count": self.sample_count,
            "dims": list(self.dims),
            "sampler_id": self.sampler_id,
            "master_seed": self.master_seed,
            "residual_tol": self.residual_tol,
            "records": [asdict(r) for r in self.records],
            "aggregate": {
                "max_realignment": self.max_realignment,
                "min_eigenvalue": self.min_eigenvalue,
                "violations": len(self.violations),
                "violation_seeds": [r.seed for r in self.violations],
                "sppt_failures": len(self.sppt_failures),
            },
        }


def check_sampler(dim_a: int, dim_b: int, sampler: str) -> None:
    if sampler not in SAMPLERS:
        raise ValueError(f"unknown sampler {sampler!r}; choose from {', '.join(SAMPLERS)}")
    if dim_a < 2 or dim_b < 1:
        raise DimensionMismatch("need m >= 2 and n >= 1")
    if sampler == "normal-2xN" and dim_a != 2:
        raise DimensionMismatch("the normal-2xN sampler needs m = 2")


def run_sample(dim_a: int, dim_b: int, sampler: str, index: int, seed: int, tol: Tolerance) -> SampleRecord:
    f = SAMPLERS[sampler](dim_a, dim_b, seed)
    v = sppt_verdict(f, tol)
    s = assemble_state(f, tol=tol).normalize()
    _, lo = is_ppt(s, tol)
    return SampleRecord(index, seed, lo, realignment_value(s), v.max_defect, v.is_sppt)


def run_conjecture(
    dim_a: int,
    dim_b: int,
    count: int,
    sampler: str = "commuting",
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOL,
) -> HarnessReport:
    if count < 1:
        raise ValueError("count must be >= 1")
    check_sampler(dim_a, dim_b, sampler)
    records = tuple(
        run_sample(dim_a, dim_b, sampler, i, derive_seed(seed, i), tol) for i in range(count)
    )
    return HarnessReport(count, (dim_a, dim_b), sampler, seed, tol.residual_tol, records)
