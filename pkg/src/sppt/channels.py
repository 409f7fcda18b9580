"""The linear map M_M -> M_N sending matrix units e_ij to the blocks rho_ij."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .bipartite import BipartiteState, from_matrix, is_ppt, realignment_value
from .matrix_core import DEFAULT_TOL, DimensionMismatch, Tolerance, as_matrix, is_psd, max_abs


class EbStatus(enum.Enum):
    CERTIFIED_NOT = "certified not"
    CONSISTENT = "consistent"
    UNKNOWN = "unknown"


@dataclass(frozen=True, eq=False)
class StateChannel:
    source: BipartiteState

    @property
    def dim_in(self) -> int:
        return self.source.dim_a

    @property
    def dim_out(self) -> int:
        return self.source.dim_b

    @property
    def blocks(self) -> np.ndarray:
        return self.source.blocks()


def channel(state: BipartiteState) -> StateChannel:
    return StateChannel(state)


def apply(ch: StateChannel, a) -> np.ndarray:
    """sum_ij A_ij rho_ij."""
    a = as_matrix(a)
    m = ch.dim_in
    if a.shape != (m, m):
        raise DimensionMismatch(f"input must be {m}x{m}, got {a.shape}")
    return np.einsum("ij,ijkl->kl", a, ch.blocks)


def choi(ch: StateChannel, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
    """(1 (x) Phi) applied to the maximally entangled projector on C^M (x) C^M.

    Equals source / M; the identity is checked on construction.
    """
    m, n = ch.dim_in, ch.dim_out
    out = np.zeros((m * n, m * n), dtype=complex)
    for i in range(m):
        for j in range(m):
            e = np.zeros((m, m))
            e[i, j] = 1.0
            out += np.kron(e, apply(ch, e))
    out /= m
    defect = max_abs(out * m - ch.source.matrix)
    if defect > tol.eq_tol:
        raise AssertionError(f"Choi matrix differs from source/M by {defect:.3e}")
    return from_matrix(out, m, n, tol=tol)


def tp_defect(ch: StateChannel) -> float:
    """max_ij |tr(rho_ij) - delta_ij| after rescaling so that sum_i tr(rho_ii) = M.

    Zero exactly when the (rescaled) map is trace preserving.
    """
    m = ch.dim_in
    traces = np.trace(ch.blocks, axis1=2, axis2=3)
    total = np.trace(traces).real
    if total <= 0:
        return float("inf")
    traces = traces * (m / total)
    return max_abs(traces - np.eye(m))


@dataclass(frozen=True)
class EbReport:
    cp: bool
    tp_defect: float
    choi_ppt: bool
    choi_min_eig_pt: float
    choi_realignment: float
    eb_certified_false: bool
    status: EbStatus
    note: str = "necessary criteria only: entanglement breaking cannot be certified positively"


def eb_report(ch: StateChannel, tol: Tolerance = DEFAULT_TOL) -> EbReport:
    c = choi(ch, tol)
    cp, _ = is_psd(c.matrix, tol)
    ppt, lo = is_ppt(c, tol)
    value = realignment_value(c)
    certified_false = (not ppt) or value > 1.0 + tol.residual_tol
    if certified_false:
        status = EbStatus.CERTIFIED_NOT
    elif cp:
        status = EbStatus.CONSISTENT
    else:
        status = EbStatus.UNKNOWN
    return EbReport(
        cp=cp,
        tp_defect=tp_defect(ch),
        choi_ppt=ppt,
        choi_min_eig_pt=lo,
        choi_realignment=value,
        eb_certified_false=certified_false,
        status=status,
    )
