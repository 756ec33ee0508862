"""JSON matrix files.

A complex scalar is ``[re, im]``.  A plain matrix is
``{"rows": m, "cols": n, "entries": [[[re, im], ...], ...]}``; a block
matrix is ``{"block_dims": [d1, ..., dn], "blocks": [[matrix | null, ...], ...]}``
with ``null`` standing for a zero block.  Floats are written with Python's
shortest round-trip repr, so a write/read cycle is exact.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .blocks import BlockMatrix
from .errors import DimensionMismatch, NumradError

__all__ = [
    "MatrixFileError",
    "block_to_obj",
    "dump",
    "dumps",
    "load",
    "loads",
    "matrix_from_obj",
    "matrix_to_obj",
    "obj_to_any",
]


class MatrixFileError(NumradError, ValueError):
    """A matrix file could not be parsed; the message carries the location."""


def _scalar(v: Any, where: str) -> complex:
    if isinstance(v, bool) or not (
        isinstance(v, list) and len(v) == 2 and all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in v)
    ):
        raise MatrixFileError(f"{where}: expected a complex scalar [re, im], got {v!r}")
    re, im = float(v[0]), float(v[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise MatrixFileError(f"{where}: non-finite entry {v!r}")
    return complex(re, im)


def matrix_from_obj(obj: Any, where: str = "matrix") -> np.ndarray:
    if not isinstance(obj, dict) or not {"rows", "cols", "entries"} <= obj.keys():
        raise MatrixFileError(f"{where}: expected an object with rows, cols and entries")
    rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    if not (isinstance(rows, int) and isinstance(cols, int) and rows > 0 and cols > 0):
        raise MatrixFileError(f"{where}: rows and cols must be positive integers")
    if not isinstance(entries, list) or len(entries) != rows:
        raise MatrixFileError(f"{where}: expected {rows} rows of entries")
    out = np.empty((rows, cols), dtype=np.complex128)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != cols:
            raise MatrixFileError(f"{where}: row {i} must have {cols} entries")
        for j, v in enumerate(row):
            out[i, j] = _scalar(v, f"{where}: row {i}, column {j}")
    return out


def matrix_to_obj(A) -> dict:
    A = np.asarray(A, dtype=np.complex128)
    return {
        "rows": int(A.shape[0]),
        "cols": int(A.shape[1]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in A],
    }


def block_from_obj(obj: Any) -> BlockMatrix:
    dims = obj.get("block_dims")
    grid = obj.get("blocks")
    if not isinstance(dims, list) or not all(isinstance(d, int) and not isinstance(d, bool) for d in dims):
        raise MatrixFileError("block_dims must be a list of integers")
    if not isinstance(grid, list) or not all(isinstance(r, list) for r in grid):
        raise MatrixFileError("blocks must be a list of lists")
    blocks = [
        [None if b is None else matrix_from_obj(b, f"blocks[{i}][{j}]") for j, b in enumerate(row)]
        for i, row in enumerate(grid)
    ]
    try:
        return BlockMatrix(dims, blocks)
    except DimensionMismatch as exc:
        raise MatrixFileError(str(exc)) from exc


def block_to_obj(M: BlockMatrix) -> dict:
    return {
        "block_dims": list(M.block_dims),
        "blocks": [
            [None if not np.any(b) else matrix_to_obj(b) for b in row] for row in M.blocks
        ],
    }


def obj_to_any(obj: Any) -> np.ndarray | BlockMatrix:
    if isinstance(obj, dict) and "block_dims" in obj:
        return block_from_obj(obj)
    return matrix_from_obj(obj)


def loads(text: str) -> np.ndarray | BlockMatrix:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFileError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return obj_to_any(obj)


def load(path: str | Path) -> np.ndarray | BlockMatrix:
    return loads(Path(path).read_text())


def dumps(M: np.ndarray | BlockMatrix) -> str:
    obj = block_to_obj(M) if isinstance(M, BlockMatrix) else matrix_to_obj(M)
    return json.dumps(obj)


def dump(M: np.ndarray | BlockMatrix, path: str | Path) -> None:
    Path(path).write_text(dumps(M) + "\n")
