"""JSON file formats for matrices, factors and harness reports.

Complex numbers are ``[re, im]`` pairs. Floats are written with Python's
shortest round-trip repr, so parse(serialize(x)) is bit-exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .bipartite import BipartiteState, from_matrix
from .factor import SpptFactor
from .matrix_core import DEFAULT_TOL, Tolerance

MATRIX_FORMAT = "sppt-matrix/1"
FACTOR_FORMAT = "sppt-factor/1"


class FileFormatError(ValueError):
    pass


def encode_complex_array(a) -> list:
    a = np.asarray(a, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in a]


def decode_complex_array(data, shape: tuple[int, int] | None = None) -> np.ndarray:
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FileFormatError(f"malformed complex array: {exc}") from exc
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise FileFormatError(f"complex array must be rows of [re, im] pairs, got shape {arr.shape}")
    out = arr[..., 0] + 1j * arr[..., 1]
    if shape is not None and out.shape != shape:
        raise FileFormatError(f"array has shape {out.shape}, expected {shape}")
    return out


def parse_matrix_literal(text: str) -> np.ndarray:
    """Parse a JSON matrix whose entries are numbers or ``[re, im]`` pairs."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"not a JSON matrix: {text!r}") from exc

    def entry(x):
        if isinstance(x, (int, float)):
            return complex(x)
        if isinstance(x, list) and len(x) == 2 and all(isinstance(v, (int, float)) for v in x):
            return complex(x[0], x[1])
        raise FileFormatError(f"bad matrix entry {x!r}")

    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise FileFormatError("matrix literal must be a list of rows")
    return np.array([[entry(x) for x in row] for row in data], dtype=complex)


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=1, allow_nan=False) + "\n"


@dataclass
class MatrixFile:
    dims: tuple[int, int]
    normalized: bool
    entries: np.ndarray
    metadata: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_state(cls, s: BipartiteState, metadata: dict[str, Any] | None = None) -> "MatrixFile":
        return cls((s.dim_a, s.dim_b), s.normalized, np.array(s.matrix), dict(metadata or {}))

    def to_state(self, tol: Tolerance = DEFAULT_TOL) -> BipartiteState:
        return from_matrix(self.entries, *self.dims, tol=tol)

    def to_json(self) -> dict[str, Any]:
        return {
            "format": MATRIX_FORMAT,
            "dims": list(self.dims),
            "normalized": self.normalized,
            "entries": encode_complex_array(self.entries),
            "metadata": self.metadata,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "MatrixFile":
        if not isinstance(data, dict) or data.get("format") != MATRIX_FORMAT:
            raise FileFormatError(f"not a {MATRIX_FORMAT} document")
        try:
            m, n = (int(d) for d in data["dims"])
            d = m * n
            entries = decode_complex_array(data["entries"], (d, d))
            return cls((m, n), bool(data["normalized"]), entries, dict(data.get("metadata", {})))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, FileFormatError):
                raise
            raise FileFormatError(f"malformed matrix file: {exc}") from exc


def write_matrix(path, mf: MatrixFile) -> None:
    Path(path).write_text(dumps(mf.to_json()))


def read_matrix(path) -> MatrixFile:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from exc
    return MatrixFile.from_json(data)


def factor_to_json(f: SpptFactor, residual: float, metadata: dict[str, Any] | None = None) -> dict[str, Any]:
    return {
        "format": FACTOR_FORMAT,
        "dims": [f.dim_a, f.dim_b],
        "x_blocks": [encode_complex_array(x) for x in f.x_blocks],
        "s_blocks": [
            {"i": i + 1, "j": j + 1, "block": encode_complex_array(s)}
            for (i, j), s in sorted(f.s_blocks.items())
        ],
        "reconstruction_residual": residual,
        "metadata": dict(metadata or {}),
    }


def factor_from_json(data: dict[str, Any]) -> SpptFactor:
    if not isinstance(data, dict) or data.get("format") != FACTOR_FORMAT:
        raise FileFormatError(f"not a {FACTOR_FORMAT} document")
    m, n = (int(d) for d in data["dims"])
    xs = tuple(decode_complex_array(x, (n, n)) for x in data["x_blocks"])
    ss = {(e["i"] - 1, e["j"] - 1): decode_complex_array(e["block"], (n, n)) for e in data["s_blocks"]}
    return SpptFactor(m, n, xs, ss)
