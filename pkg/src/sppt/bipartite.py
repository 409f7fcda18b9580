"""Density matrices on C^M (x) C^N viewed as M x M arrays of N x N blocks."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .matrix_core import (
    DEFAULT_TOL,
    DimensionMismatch,
    NotPsd,
    Tolerance,
    as_matrix,
    check_hermitian,
    hermitian_eigenvalues,
    trace_norm,
)


class ZeroTrace(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """A validated (possibly unnormalized) density matrix with subsystem dims.

    Basis ordering is ``|i, k> -> i * dim_b + k`` with ``i`` indexing A.
    """

    dim_a: int
    dim_b: int
    matrix: np.ndarray
    normalized: bool

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    def block(self, i: int, j: int) -> np.ndarray:
        return block(self, i, j)

    def blocks(self) -> np.ndarray:
        """Array of shape (M, M, N, N) with ``[i, j]`` the block rho_ij (0-based)."""
        return to_blocks(self.matrix, self.dim_a, self.dim_b)

    def normalize(self) -> "BipartiteState":
        if self.normalized:
            return self
        tr = np.trace(self.matrix).real
        return BipartiteState(self.dim_a, self.dim_b, self.matrix / tr, True)


def from_matrix(
    a,
    dim_a: int,
    dim_b: int,
    require_normalized: bool = False,
    tol: Tolerance = DEFAULT_TOL,
) -> BipartiteState:
    """Validate ``a`` as a state on C^dim_a (x) C^dim_b.

    With ``require_normalized`` the matrix is rescaled by its trace.
    """
    if dim_a < 1 or dim_b < 1:
        raise DimensionMismatch("subsystem dimensions must be positive")
    m = as_matrix(a, square=True)
    if m.shape[0] != dim_a * dim_b:
        raise DimensionMismatch(f"matrix is {m.shape[0]}x{m.shape[0]}, expected {dim_a * dim_b}")
    m = check_hermitian(m, tol)
    m = 0.5 * (m + m.conj().T)
    lo = float(hermitian_eigenvalues(m, tol)[0])
    if lo < -tol.psd_tol:
        raise NotPsd(f"minimum eigenvalue {lo:.3e} below -psd_tol")
    tr = float(np.trace(m).real)
    if require_normalized:
        if tr <= tol.psd_tol:
            raise ZeroTrace(f"trace {tr:.3e} too small to normalize")
        m = m / tr
        normalized = True
    else:
        normalized = abs(tr - 1.0) <= tol.eq_tol
    m.setflags(write=False)
    return BipartiteState(dim_a, dim_b, m, normalized)


def to_blocks(m: np.ndarray, dim_a: int, dim_b: int) -> np.ndarray:
    return np.asarray(m).reshape(dim_a, dim_b, dim_a, dim_b).transpose(0, 2, 1, 3)


def from_blocks(blocks: np.ndarray) -> np.ndarray:
    blocks = np.asarray(blocks)
    ma, _, nb, _ = blocks.shape
    return blocks.transpose(0, 2, 1, 3).reshape(ma * nb, ma * nb)


def block(s: BipartiteState, i: int, j: int) -> np.ndarray:
    """Block rho_ij with 1-based indices, matching the usual block notation."""
    if not (1 <= i <= s.dim_a and 1 <= j <= s.dim_a):
        raise IndexError(f"block index ({i}, {j}) outside 1..{s.dim_a}")
    n = s.dim_b
    return s.matrix[(i - 1) * n:i * n, (j - 1) * n:j * n].copy()


def partial_transpose_matrix(m, dim_a: int, dim_b: int) -> np.ndarray:
    """Transpose on subsystem A: block (i, j) of the result is block (j, i)."""
    t = np.asarray(m).reshape(dim_a, dim_b, dim_a, dim_b).transpose(2, 1, 0, 3)
    return t.reshape(dim_a * dim_b, dim_a * dim_b)


def partial_transpose_a(s: BipartiteState) -> np.ndarray:
    return partial_transpose_matrix(s.matrix, s.dim_a, s.dim_b)


class PptStatus(enum.Enum):
    PPT = "PPT"
    NPT = "NPT"
    MARGINAL = "marginal"

    @property
    def is_ppt(self) -> bool:
        return self is not PptStatus.NPT


def ppt_status(s: BipartiteState, tol: Tolerance = DEFAULT_TOL) -> tuple[PptStatus, float]:
    """Three-valued PPT verdict plus the minimum eigenvalue of rho^T_A.

    MARGINAL means ``|min_eig| <= psd_tol``; the boolean API counts it as PPT.
    """
    lo = float(hermitian_eigenvalues(partial_transpose_a(s), tol)[0])
    if abs(lo) <= tol.psd_tol:
        return PptStatus.MARGINAL, lo
    return (PptStatus.PPT if lo > 0 else PptStatus.NPT), lo


def is_ppt(s: BipartiteState, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    status, lo = ppt_status(s, tol)
    return status.is_ppt, lo


def realign_matrix(m, dim_a: int, dim_b: int) -> np.ndarray:
    """Reshuffle <i,k|rho|j,l> into row (i, j), column (k, l), both row-major.

    The result is dim_a^2 x dim_b^2.
    """
    t = np.asarray(m).reshape(dim_a, dim_b, dim_a, dim_b).transpose(0, 2, 1, 3)
    return t.reshape(dim_a * dim_a, dim_b * dim_b)


def unrealign_matrix(r, dim_a: int, dim_b: int) -> np.ndarray:
    t = np.asarray(r).reshape(dim_a, dim_a, dim_b, dim_b).transpose(0, 2, 1, 3)
    return t.reshape(dim_a * dim_b, dim_a * dim_b)


def realign(s: BipartiteState) -> np.ndarray:
    return realign_matrix(s.matrix, s.dim_a, s.dim_b)


def realignment_value(s: BipartiteState) -> float:
    """Trace norm of the realigned, trace-normalized state.

    Values above 1 certify entanglement; values at or below 1 are inconclusive.
    """
    s = s.normalize()
    return trace_norm(realign(s))


def product_state(rho_a, rho_b, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
    rho_a = as_matrix(rho_a, square=True)
    rho_b = as_matrix(rho_b, square=True)
    return from_matrix(np.kron(rho_a, rho_b), rho_a.shape[0], rho_b.shape[0], tol=tol)


def maximally_entangled(n: int) -> np.ndarray:
    """Projector onto (1/sqrt n) sum_i |ii>."""
    psi = np.eye(n, dtype=complex).reshape(n * n) / np.sqrt(n)
    return np.outer(psi, psi.conj())
