"""Named state families together with their published PPT/SPPT verdicts.

Each generator returns a normalized :class:`BipartiteState`. :func:`claims`
evaluates the closed-form verdict rules attached to a family so they can be
compared with the numerical tests in :mod:`sppt.bipartite` and
:mod:`sppt.factor`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .bipartite import BipartiteState, from_matrix, maximally_entangled
from .matrix_core import DEFAULT_TOL, NotPsd, Tolerance, as_matrix, hermitian_eigenvalues


class ParamOutOfRange(ValueError):
    pass


FAMILY_IDS = (
    "werner",
    "isotropic",
    "circulant2x2",
    "orthogonally_invariant",
    "horodecki_2x4",
    "horodecki_3x3",
    "diagonal_class",
    "circulant_NxN",
)


@dataclass(frozen=True)
class FamilySpec:
    family_id: str
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.family_id not in FAMILY_IDS:
            raise ValueError(f"unknown family {self.family_id!r}")


@dataclass(frozen=True)
class FamilyVerdictClaim:
    claimed_ppt: Optional[bool]
    claimed_sppt: Optional[bool]
    source: str


def _check_range(name: str, value: float, lo: float, hi: float, tol: float = 1e-12):
    if not (lo - tol <= value <= hi + tol):
        raise ParamOutOfRange(f"parameter out of range: {name}={value!r} not in [{lo}, {hi}]")


def _psd_input(name: str, a, n: int, tol: Tolerance) -> np.ndarray:
    a = as_matrix(a, square=True)
    if a.shape != (n, n):
        raise ParamOutOfRange(f"{name} must be {n}x{n}")
    if hermitian_eigenvalues(a, tol)[0] < -tol.psd_tol:
        raise NotPsd(f"{name} is not positive semidefinite")
    return a


# -- Werner / isotropic -----------------------------------------------------


def antisymmetric_projector(n: int) -> np.ndarray:
    flip = np.zeros((n * n, n * n))
    for i in range(n):
        for j in range(n):
            flip[i * n + j, j * n + i] = 1.0
    return 0.5 * (np.eye(n * n) - flip)


def werner_range(n: int) -> tuple[float, float]:
    return -(n - 1) / (n + 1), 1.0


def werner(n: int, p: float, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
    """(1 - p) I/N^2 + p P_anti/d_anti.

    p = 0 is the maximally mixed state; the lower end of the range is the
    normalized symmetric projector and p = 1 the antisymmetric one, so the
    whole Werner family is covered. PPT iff p <= 1/(N + 1).
    """
    if n < 2:
        raise ParamOutOfRange("Werner states need N >= 2")
    _check_range("p", p, *werner_range(n))
    d_anti = n * (n - 1) / 2
    rho = (1 - p) * np.eye(n * n) / n**2 + p * antisymmetric_projector(n) / d_anti
    return from_matrix(rho, n, n, require_normalized=True, tol=tol)


def isotropic_range(n: int) -> tuple[float, float]:
    return -1.0 / (n * n - 1), 1.0


def isotropic(n: int, p: float, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
    """(1 - p) I/N^2 + p P+, maximally mixed at p = 0; PPT iff p <= 1/(N + 1)."""
    if n < 2:
        raise ParamOutOfRange("isotropic states need N >= 2")
    _check_range("p", p, *isotropic_range(n))
    rho = (1 - p) * np.eye(n * n) / n**2 + p * maximally_entangled(n)
    return from_matrix(rho, n, n, require_normalized=True, tol=tol)


# -- circulant ----------------------------------------------------------------


def circulant(blocks, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
    """N (x) N circulant state sum_k sum_ij a^(k)_ij |i, i+k><j, j+k| (indices mod N).

    ``blocks[k]`` is the N x N PSD matrix a^(k).
    """
    blocks = [as_matrix(b, square=True) for b in blocks]
    n = len(blocks)
    rho = np.zeros((n * n, n * n), dtype=complex)
    for k, a in enumerate(blocks):
        a = _psd_input(f"blocks[{k}]", a, n, tol)
        idx = [i * n + (i + k) % n for i in range(n)]
        rho[np.ix_(idx, idx)] += a
    return from_matrix(rho, n, n, require_normalized=True, tol=tol)


def circulant_2x2(a, b, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
    """The 2 (x) 2 circulant state: ``a`` on span{|00>, |11>}, ``b`` on span{|01>, |10>}."""
    return circulant([a, b], tol)


def circulant_2x2_swapped(a, b) -> tuple[np.ndarray, np.ndarray]:
    """The matrices a~ and b~ that replace a and b under partial transposition."""
    a = as_matrix(a)
    b = as_matrix(b)
    a_t = np.array([[a[0, 0], b[1, 0]], [b[0, 1], a[1, 1]]])
    b_t = np.array([[b[0, 0], a[1, 0]], [a[0, 1], b[1, 1]]])
    return a_t, b_t


def orthogonally_invariant(a: float, b: float, c: float, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
    """Two-qubit state commuting with U (x) U for real orthogonal U.

    Requires a, b, c >= 0 and a + b + c = 1.
    """
    for name, v in (("a", a), ("b", b), ("c", c)):
        if v < -tol.eq_tol:
            raise ParamOutOfRange(f"parameter out of range: {name}={v!r} < 0")
    if abs(a + b + c - 1.0) > tol.eq_tol:
        raise ParamOutOfRange(f"parameter out of range: a + b + c = {a + b + c!r} != 1")
    rho = np.zeros((4, 4))
    rho[0, 0] = rho[3, 3] = a + 2 * b
    rho[0, 3] = rho[3, 0] = 2 * b - a
    rho[1, 1] = rho[2, 2] = a + 2 * c
    rho[1, 2] = rho[2, 1] = a - 2 * c
    return from_matrix(rho / 4, 2, 2, require_normalized=True, tol=tol)


# -- Horodecki bound entangled states ---------------------------------------


def horodecki_2x4(b: float, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
    """Horodecki's PPT entangled 2 (x) 4 family, b in [0, 1]."""
    _check_range("b", b, 0.0, 1.0)
    b = float(np.clip(b, 0.0, 1.0))
    r = np.sqrt(1 - b * b) / 2
    rho = np.zeros((8, 8))
    for k in range(4):
        rho[k, k] = b
    for k in range(3):
        rho[k, k + 5] = rho[k + 5, k] = b
        rho[k + 5, k + 5] = b
    rho[4, 4] = rho[7, 7] = (1 + b) / 2
    rho[4, 7] = rho[7, 4] = r
    return from_matrix(rho / (7 * b + 1), 2, 4, require_normalized=True, tol=tol)


def horodecki_3x3(a: float, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
    """Horodecki's PPT entangled 3 (x) 3 family, a in [0, 1]."""
    _check_range("a", a, 0.0, 1.0)
    a = float(np.clip(a, 0.0, 1.0))
    r = np.sqrt(1 - a * a) / 2
    rho = a * np.eye(9)
    for i in (0, 4, 8):
        for j in (0, 4, 8):
            rho[i, j] = a
    rho[6, 6] = rho[8, 8] = (1 + a) / 2
    rho[6, 8] = rho[8, 6] = r
    return from_matrix(rho / (8 * a + 1), 3, 3, require_normalized=True, tol=tol)


# -- diagonal class -----------------------------------------------------------


def diagonal_class(a, b, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
    """sum_ij a_ij |ii><jj| + sum_{i != j} b_ij |ij><ij|.

    ``a`` is an N x N PSD matrix; ``b`` is N x N with strictly positive
    off-diagonal entries (its diagonal is ignored).
    """
    a = as_matrix(a, square=True)
    n = a.shape[0]
    a = _psd_input("a", a, n, tol)
    b = np.asarray(b, dtype=float)
    if b.shape != (n, n):
        raise ParamOutOfRange(f"b must be {n}x{n}")
    off = ~np.eye(n, dtype=bool)
    if np.any(b[off] <= 0):
        raise ParamOutOfRange("parameter out of range: b_ij must be > 0 for i != j")
    rho = np.zeros((n * n, n * n), dtype=complex)
    diag_idx = [i * n + i for i in range(n)]
    rho[np.ix_(diag_idx, diag_idx)] = a
    for i in range(n):
        for j in range(n):
            if i != j:
                rho[i * n + j, i * n + j] = b[i, j]
    return from_matrix(rho, n, n, require_normalized=True, tol=tol)


# -- dispatch -----------------------------------------------------------------


def make(spec: FamilySpec, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
    p = spec.params
    fid = spec.family_id
    if fid == "werner":
        return werner(int(p["n"]), float(p["p"]), tol)
    if fid == "isotropic":
        return isotropic(int(p["n"]), float(p["p"]), tol)
    if fid == "circulant2x2":
        return circulant_2x2(p["a"], p["b"], tol)
    if fid == "orthogonally_invariant":
        return orthogonally_invariant(float(p["a"]), float(p["b"]), float(p["c"]), tol)
    if fid == "horodecki_2x4":
        return horodecki_2x4(float(p["b"]), tol)
    if fid == "horodecki_3x3":
        return horodecki_3x3(float(p["a"]), tol)
    if fid == "diagonal_class":
        return diagonal_class(p["a"], p["b"], tol)
    if fid == "circulant_NxN":
        return circulant(p["blocks"], tol)
    raise ValueError(fid)


def _psd2(m, tol: float) -> bool:
    m = np.asarray(m)
    det = (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real
    return m[0, 0].real >= -tol and m[1, 1].real >= -tol and det >= -tol


def claims(spec: FamilySpec, tol: Tolerance = DEFAULT_TOL) -> FamilyVerdictClaim:
    """Closed-form PPT/SPPT verdicts for a family member.

    These are the published iff-rules, evaluated with ``eq_tol`` slack at
    equality boundaries. ``None`` means no closed form is attached.
    """
    p = spec.params
    fid = spec.family_id
    eps = tol.eq_tol
    if fid in ("werner", "isotropic"):
        n, q = int(p["n"]), float(p["p"])
        return FamilyVerdictClaim(
            claimed_ppt=q <= 1.0 / (n + 1) + eps,
            claimed_sppt=abs(q) <= eps,
            source=f"{fid}: PPT iff p <= 1/(N+1); SPPT iff maximally mixed",
        )
    if fid in ("circulant2x2", "circulant_NxN"):
        blocks = [p["a"], p["b"]] if fid == "circulant2x2" else list(p["blocks"])
        blocks = [as_matrix(b) for b in blocks]
        if len(blocks) == 2:
            a, b = blocks
            a_t, b_t = circulant_2x2_swapped(a, b)
            ppt = _psd2(a_t, eps) and _psd2(b_t, eps)
            return FamilyVerdictClaim(
                claimed_ppt=ppt,
                claimed_sppt=ppt and abs(abs(a[0, 1]) - abs(b[0, 1])) <= eps,
                source="circulant 2x2: PPT iff a~, b~ >= 0; SPPT iff PPT and |a12| = |b12|",
            )
        n = len(blocks)
        diagonal = all(np.max(np.abs(b - np.diag(np.diag(b)))) <= eps for b in blocks)
        if n % 2 == 1 and diagonal:
            return FamilyVerdictClaim(True, True, "odd-N circulant: diagonal states are SPPT")
        if n % 2 == 1:
            return FamilyVerdictClaim(None, False, "odd-N circulant: PPT states are SPPT iff diagonal")
        return FamilyVerdictClaim(None, None, "even-N circulant: no closed form")
    if fid == "orthogonally_invariant":
        b, c = float(p["b"]), float(p["c"])
        ppt = b <= 0.5 + eps and c <= 0.5 + eps
        return FamilyVerdictClaim(
            claimed_ppt=ppt,
            claimed_sppt=ppt and abs(b - c) <= eps,
            source="orthogonally invariant: PPT iff b, c <= 1/2; SPPT iff PPT and b = c",
        )
    if fid == "horodecki_2x4":
        return FamilyVerdictClaim(True, abs(float(p["b"])) <= eps, "Horodecki 2x4: PPT; SPPT iff b = 0")
    if fid == "horodecki_3x3":
        return FamilyVerdictClaim(True, abs(float(p["a"])) <= eps, "Horodecki 3x3: PPT; SPPT iff a = 0")
    if fid == "diagonal_class":
        a = as_matrix(p["a"])
        b = np.asarray(p["b"], dtype=float)
        n = a.shape[0]
        off = [(i, j) for i in range(n) for j in range(n) if i != j]
        ppt = all(abs(a[i, j] * a[j, i]) <= b[i, j] ** 2 + eps for i, j in off)
        vanishing = all(abs(a[i, j]) <= eps for i, j in off)
        return FamilyVerdictClaim(
            claimed_ppt=ppt,
            claimed_sppt=ppt and vanishing,
            source="diagonal class: PPT iff |a_ij a_ji| <= b_ij^2; SPPT iff a_ij = 0 for i != j",
        )
    raise ValueError(fid)
