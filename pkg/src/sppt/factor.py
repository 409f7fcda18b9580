"""Block upper-triangular factors rho = X^dagger X and the SPPT test.

A factor holds diagonal blocks X_1..X_M and, for i < j, blocks S_ij so that
the (i, j) block of X is S_ij X_i. The canonical partner Y is the same
construction with every S_ij replaced by its adjoint; rho has strong positive
partial transpose (SPPT) when rho^T_A equals Y^dagger Y.

Block indices in this module are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .bipartite import BipartiteState, from_blocks, from_matrix, partial_transpose_matrix
from .matrix_core import (
    DEFAULT_TOL,
    DimensionMismatch,
    Tolerance,
    as_matrix,
    cholesky_psd,
    dagger,
    max_abs,
    solve_right,
)


class NotRepresentable(ValueError):
    """The canonical Cholesky factor has no block S_ij with U_ij = S_ij X_i."""

    def __init__(self, i: int, j: int, residual: float):
        self.i, self.j, self.residual = i, j, residual
        super().__init__(
            f"block ({i + 1}, {j + 1}) of the canonical factor is not of the form S X_{i + 1} "
            f"(residual {residual:.3e})"
        )


@dataclass(frozen=True, eq=False)
class SpptFactor:
    dim_a: int
    dim_b: int
    x_blocks: tuple[np.ndarray, ...]
    s_blocks: dict[tuple[int, int], np.ndarray]

    def __post_init__(self):
        m, n = self.dim_a, self.dim_b
        if m < 1 or n < 1:
            raise DimensionMismatch("dimensions must be positive")
        if len(self.x_blocks) != m:
            raise DimensionMismatch(f"expected {m} diagonal blocks, got {len(self.x_blocks)}")
        expected = set(combinations(range(m), 2))
        if set(self.s_blocks) != expected:
            raise DimensionMismatch(f"s_blocks must be keyed by exactly the pairs i < j < {m}")
        for blk in (*self.x_blocks, *self.s_blocks.values()):
            if np.shape(blk) != (n, n):
                raise DimensionMismatch(f"block of shape {np.shape(blk)}, expected ({n}, {n})")

    @classmethod
    def build(cls, x_blocks, s_blocks) -> "SpptFactor":
        """Construct from sequences; ``s_blocks`` may be a dict or a nested list ``s[i][j]``."""
        xs = tuple(as_matrix(x) for x in x_blocks)
        m = len(xs)
        n = xs[0].shape[0] if xs else 0
        if isinstance(s_blocks, dict):
            ss = {k: as_matrix(v) for k, v in s_blocks.items()}
        else:
            ss = {(i, j): as_matrix(s_blocks[i][j]) for i, j in combinations(range(m), 2)}
        return cls(m, n, xs, ss)

    def s(self, i: int, j: int) -> np.ndarray:
        return self.s_blocks[(i, j)]

    def adjoint_s(self) -> "SpptFactor":
        """Same factor with every S_ij replaced by S_ij^dagger."""
        return SpptFactor(
            self.dim_a,
            self.dim_b,
            self.x_blocks,
            {k: dagger(v) for k, v in self.s_blocks.items()},
        )


def assemble_x(f: SpptFactor) -> np.ndarray:
    m, n = f.dim_a, f.dim_b
    blocks = np.zeros((m, m, n, n), dtype=complex)
    for i, x in enumerate(f.x_blocks):
        blocks[i, i] = x
    for (i, j), s in f.s_blocks.items():
        blocks[i, j] = s @ f.x_blocks[i]
    return from_blocks(blocks)


def canonical_partner(f: SpptFactor) -> np.ndarray:
    return assemble_x(f.adjoint_s())


def assemble_matrix(f: SpptFactor) -> np.ndarray:
    x = assemble_x(f)
    rho = dagger(x) @ x
    return 0.5 * (rho + dagger(rho))


def assemble_state(f: SpptFactor, validate: bool = False, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
    """The unnormalized state X^dagger X.

    With ``validate`` the direct product is cross-checked against the
    closed-form block expressions of :func:`formula_blocks`.
    """
    rho = assemble_matrix(f)
    if validate:
        expected = from_blocks(formula_blocks(f))
        err = max_abs(rho - expected)
        if err > tol.residual_tol * (1.0 + max_abs(rho)):
            raise AssertionError(f"block formulas disagree with X^dagger X by {err:.3e}")
    return from_matrix(rho, f.dim_a, f.dim_b, tol=tol)


def formula_blocks(f: SpptFactor) -> np.ndarray:
    """Blocks of X^dagger X written out term by term.

    rho_jj = sum_{k<j} X_k^+ S_kj^+ S_kj X_k + X_j^+ X_j
    rho_ij = sum_{k<i} X_k^+ S_ki^+ S_kj X_k + X_i^+ S_ij X_i   (i < j)
    """
    m, n = f.dim_a, f.dim_b
    xs = f.x_blocks
    xd = [dagger(x) for x in xs]
    out = np.zeros((m, m, n, n), dtype=complex)
    for j in range(m):
        acc = xd[j] @ xs[j]
        for k in range(j):
            s = f.s(k, j)
            acc = acc + xd[k] @ dagger(s) @ s @ xs[k]
        out[j, j] = acc
    for i, j in combinations(range(m), 2):
        acc = xd[i] @ f.s(i, j) @ xs[i]
        for k in range(i):
            acc = acc + xd[k] @ dagger(f.s(k, i)) @ f.s(k, j) @ xs[k]
        out[i, j] = acc
        out[j, i] = dagger(acc)
    return out


def condition_residuals(f: SpptFactor) -> dict[tuple[int, int], float]:
    """Residuals of the algebraic conditions equivalent to SPPT.

    Key ``(j, j)`` for j >= 1 is the diagonal condition
    sum_{k<j} X_k^+ (S_kj^+ S_kj - S_kj S_kj^+) X_k = 0; key ``(i, j)`` with
    1 <= i < j is the off-diagonal condition
    sum_{k<i} X_k^+ (S_kj^+ S_ki - S_ki S_kj^+) X_k = 0.
    """
    m = f.dim_a
    xs = f.x_blocks
    out: dict[tuple[int, int], float] = {}
    for j in range(1, m):
        acc = 0
        for k in range(j):
            s = f.s(k, j)
            acc = acc + dagger(xs[k]) @ (dagger(s) @ s - s @ dagger(s)) @ xs[k]
        out[(j, j)] = max_abs(acc)
    for i, j in combinations(range(1, m), 2):
        acc = 0
        for k in range(i):
            ski, skj = f.s(k, i), f.s(k, j)
            acc = acc + dagger(xs[k]) @ (dagger(skj) @ ski - ski @ dagger(skj)) @ xs[k]
        out[(i, j)] = max_abs(acc)
    return out


def satisfies_sufficient_commutation(f: SpptFactor, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether S_ki S_kj^+ = S_kj^+ S_ki for all k < i <= j.

    The i = j case is normality of each S_kj.
    """
    m = f.dim_a
    for k in range(m):
        for i in range(k + 1, m):
            ski = f.s(k, i)
            for j in range(i, m):
                skj_d = dagger(f.s(k, j))
                if max_abs(ski @ skj_d - skj_d @ ski) > tol.residual_tol:
                    return False
    return True


@dataclass(frozen=True)
class SpptVerdict:
    is_sppt: bool
    max_defect: float
    condition_residuals: dict[tuple[int, int], float] = field(repr=False)
    conditions_hold: bool
    sufficient_commutation: bool
    threshold: float

    @property
    def consistent(self) -> bool:
        """Whether the Y^dagger Y comparison and the algebraic conditions agree."""
        return self.is_sppt == self.conditions_hold


def sppt_verdict(f: SpptFactor, tol: Tolerance = DEFAULT_TOL) -> SpptVerdict:
    rho = assemble_matrix(f)
    y = canonical_partner(f)
    pt = partial_transpose_matrix(rho, f.dim_a, f.dim_b)
    defect = max_abs(pt - dagger(y) @ y)
    threshold = tol.residual_tol * (1.0 + max_abs(rho))
    residuals = condition_residuals(f)
    return SpptVerdict(
        is_sppt=defect <= threshold,
        max_defect=defect,
        condition_residuals=residuals,
        conditions_hold=all(r <= threshold for r in residuals.values()),
        sufficient_commutation=satisfies_sufficient_commutation(f, tol),
        threshold=threshold,
    )


def canonical_factorize(s: BipartiteState, tol: Tolerance = DEFAULT_TOL) -> SpptFactor:
    """Read a factor off the semidefinite block Cholesky factor of ``s``.

    X_i is the i-th diagonal block of U and S_ij solves U_ij = S_ij X_i.
    Raises NotRepresentable when some U_ij has rows outside the row space of
    X_i, which happens for PSD states whose diagonal blocks are singular.
    """
    m, n = s.dim_a, s.dim_b
    u = cholesky_psd(s.matrix, tol)
    ub = u.reshape(m, n, m, n).transpose(0, 2, 1, 3)
    xs = tuple(ub[i, i].copy() for i in range(m))
    ss = {}
    for i, j in combinations(range(m), 2):
        sij, exact = solve_right(ub[i, j], xs[i], tol)
        if not exact:
            raise NotRepresentable(i, j, max_abs(sij @ xs[i] - ub[i, j]))
        ss[(i, j)] = sij
    return SpptFactor(m, n, xs, ss)


def is_sppt_state(s: BipartiteState, tol: Tolerance = DEFAULT_TOL) -> SpptVerdict:
    """SPPT verdict along the canonical factorization of ``s``.

    Propagates NotRepresentable.
    """
    return sppt_verdict(canonical_factorize(s, tol), tol)


def sppt_along_canonical(s: BipartiteState, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Boolean SPPT verdict; a non-representable state counts as not SPPT."""
    try:
        return is_sppt_state(s, tol).is_sppt
    except NotRepresentable:
        return False


# -- samplers ---------------------------------------------------------------


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _ginibre(rng: np.random.Generator, n: int) -> np.ndarray:
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)


def random_unitary(n: int, seed=None) -> np.ndarray:
    """Haar-distributed unitary via QR of a Ginibre matrix with phase fix."""
    rng = _rng(seed)
    q, r = np.linalg.qr(_ginibre(rng, n))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_invertible(n: int, seed=None, min_sv: float = 0.1) -> np.ndarray:
    """Ginibre draw, shifted by c*I when its smallest singular value is below ``min_sv``."""
    rng = _rng(seed)
    x = _ginibre(rng, n)
    lo = np.sqrt(max(float(np.linalg.eigvalsh(dagger(x) @ x)[0]), 0.0))
    if lo < min_sv:
        # choose c away from -spectrum(x) so x + cI is well conditioned
        eig = np.linalg.eigvals(x)
        c = 1.0 + float(np.max(np.abs(eig)))
        x = x + c * np.eye(n)
    return x


def random_factor(dim_a: int, dim_b: int, seed=None) -> SpptFactor:
    """Fully generic factor: Ginibre X_i and S_ij (almost never SPPT for dim_b > 1)."""
    rng = _rng(seed)
    xs = tuple(_ginibre(rng, dim_b) for _ in range(dim_a))
    ss = {k: _ginibre(rng, dim_b) for k in combinations(range(dim_a), 2)}
    return SpptFactor(dim_a, dim_b, xs, ss)


def _commuting_factor(dim_a: int, dim_b: int, seed, hermitian: bool) -> SpptFactor:
    if dim_a < 2 or dim_b < 1:
        raise DimensionMismatch("need dim_a >= 2 and dim_b >= 1")
    rng = _rng(seed)
    u = random_unitary(dim_b, rng)
    ss = {}
    for k in combinations(range(dim_a), 2):
        d = rng.standard_normal(dim_b)
        if not hermitian:
            d = (d + 1j * rng.standard_normal(dim_b)) / np.sqrt(2)
        ss[k] = (u * d) @ dagger(u)
    xs = tuple(random_invertible(dim_b, rng) for _ in range(dim_a))
    return SpptFactor(dim_a, dim_b, xs, ss)


def sample_commuting_factor(dim_a: int, dim_b: int, seed=None) -> SpptFactor:
    """Random factor whose S_ij = U D_ij U^dagger share one unitary U.

    D_ij are independent complex diagonals, so every S_ki commutes with every
    S_kj^dagger and the result is SPPT.
    """
    return _commuting_factor(dim_a, dim_b, seed, hermitian=False)


def sample_hermitian_factor(dim_a: int, dim_b: int, seed=None) -> SpptFactor:
    """As :func:`sample_commuting_factor` with real D_ij, giving rho^T_A = rho."""
    return _commuting_factor(dim_a, dim_b, seed, hermitian=True)


def sample_normal_2xn(dim_a: int, dim_b: int, seed=None) -> SpptFactor:
    """2 (x) N factor with one random normal S and independent random X_1, X_2."""
    if dim_a != 2:
        raise DimensionMismatch("the normal-2xN sampler needs dim_a == 2")
    return _commuting_factor(2, dim_b, seed, hermitian=False)


SAMPLERS = {
    "commuting": sample_commuting_factor,
    "hermitian": sample_hermitian_factor,
    "normal-2xN": sample_normal_2xn,
}
