"""Dense complex matrix kernels shared by every other module.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``. The
functions here never mutate their inputs.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

import numpy as np


class LinalgError(ValueError):
    """Base class for numerical precondition failures."""


class NotHermitian(LinalgError):
    pass


class NotPsd(LinalgError):
    pass


class NoConvergence(LinalgError):
    pass


class DimensionMismatch(LinalgError):
    pass


@dataclass(frozen=True)
class Tolerance:
    """Absolute thresholds used by the numerical predicates.

    eq_tol bounds entrywise comparisons, psd_tol bounds how negative an
    eigenvalue (or Cholesky pivot) may be while still counted as zero, and
    residual_tol bounds factorization and identity residuals.
    """

    eq_tol: float = 1e-10
    psd_tol: float = 1e-10
    residual_tol: float = 1e-8

    def __post_init__(self):
        for name in ("eq_tol", "psd_tol", "residual_tol"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be strictly positive, got {value!r}")

    @classmethod
    def from_env(cls, var: str = "SPPT_TOL") -> "Tolerance":
        """Default tolerances with residual_tol taken from ``$SPPT_TOL`` if set."""
        raw = os.environ.get(var)
        if raw is None or raw.strip() == "":
            return cls()
        try:
            value = float(raw)
        except ValueError as exc:
            raise ValueError(f"{var}={raw!r} is not a decimal number") from exc
        return replace(cls(), residual_tol=value)


DEFAULT_TOL = Tolerance()


def as_matrix(a, *, square: bool = False) -> np.ndarray:
    """Coerce ``a`` to a finite 2-d complex array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {m.shape}")
    if square and m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def max_abs(a) -> float:
    """Entrywise max norm; 0 for empty input."""
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def dagger(a) -> np.ndarray:
    return np.asarray(a).conj().T


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def check_hermitian(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    m = as_matrix(a, square=True)
    defect = max_abs(m - dagger(m))
    if defect > tol.eq_tol:
        raise NotHermitian(f"max |A - A^dagger| = {defect:.3e} exceeds eq_tol = {tol.eq_tol:.1e}")
    return m


def hermitian_eigh(a, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and column eigenvectors of a Hermitian matrix."""
    m = check_hermitian(a, tol)
    # symmetrize so rounding-level skew does not leak into the spectrum
    m = 0.5 * (m + dagger(m))
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return w, v


def hermitian_eigenvalues(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    return hermitian_eigh(a, tol)[0]


def is_psd(a, tol: Tolerance = DEFAULT_TOL) -> tuple[bool, float]:
    """Return ``(min_eig >= -psd_tol, min_eig)``."""
    w = hermitian_eigenvalues(a, tol)
    lo = float(w[0]) if w.size else 0.0
    return lo >= -tol.psd_tol, lo


def cholesky_psd(a, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Upper-triangular ``U`` with ``A = U^dagger U`` for semidefinite ``A``.

    No pivoting: the row order of ``A`` is preserved. A pivot at or below
    ``psd_tol`` is treated as zero and its whole row of ``U`` is zeroed.
    Raises NotPsd if a pivot falls below ``-psd_tol``.
    """
    m = check_hermitian(a, tol)
    n = m.shape[0]
    u = np.zeros((n, n), dtype=complex)
    for k in range(n):
        # Schur complement row k, given rows 0..k-1 of U
        row = m[k, k:] - u[:k, k].conj() @ u[:k, k:]
        pivot = row[0].real
        if pivot <= tol.psd_tol:
            if pivot < -tol.psd_tol:
                raise NotPsd(f"pivot {k} is {pivot:.3e} < -psd_tol")
            continue
        d = np.sqrt(pivot)
        u[k, k] = d
        u[k, k + 1:] = row[1:] / d
    return u


def solve_right(b, a, tol: Tolerance = DEFAULT_TOL) -> tuple[np.ndarray, bool]:
    """Minimum-norm ``S`` with ``S A ~= B``; also reports whether it is exact.

    Exactness means ``max|S A - B| <= residual_tol * (1 + max|B|)``.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[1]:
        raise DimensionMismatch(f"B has {b.shape[1]} columns, A has {a.shape[1]}")
    u, sv, vh = np.linalg.svd(a, full_matrices=False)
    keep = sv > tol.psd_tol * max(1.0, float(sv[0]) if sv.size else 0.0)
    inv = np.zeros_like(sv)
    inv[keep] = 1.0 / sv[keep]
    pinv = (dagger(vh) * inv) @ dagger(u)
    s = b @ pinv
    exact = max_abs(s @ a - b) <= tol.residual_tol * (1.0 + max_abs(b))
    return s, bool(exact)


def singular_values(a) -> np.ndarray:
    a = as_matrix(a)
    try:
        return np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc


def trace_norm(a) -> float:
    """Sum of singular values."""
    return float(np.sum(singular_values(a)))
