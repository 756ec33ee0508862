"""Operator matrices: an n x n grid of conformant complex blocks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch
from .linalg import as_matrix

__all__ = ["BlockMatrix"]


@dataclass(frozen=True, eq=False)
class BlockMatrix:
    """Grid ``blocks[i][j]`` of shape ``block_dims[i] x block_dims[j]``.

    Blocks given as ``None`` are stored as explicit zero blocks.
    """

    block_dims: tuple[int, ...]
    blocks: tuple[tuple[np.ndarray, ...], ...]

    def __init__(self, block_dims: Sequence[int], blocks):
        dims = tuple(int(d) for d in block_dims)
        if not dims or any(d < 1 for d in dims):
            raise DimensionMismatch(f"block_dims must be positive integers, got {list(block_dims)}")
        n = len(dims)
        if len(blocks) != n or any(len(row) != n for row in blocks):
            raise DimensionMismatch(f"conformance: expected a {n} x {n} grid of blocks")
        grid = []
        for i, row in enumerate(blocks):
            out_row = []
            for j, blk in enumerate(row):
                if blk is None:
                    blk = np.zeros((dims[i], dims[j]), dtype=np.complex128)
                else:
                    blk = as_matrix(blk, f"block ({i}, {j})")
                if blk.shape != (dims[i], dims[j]):
                    raise DimensionMismatch(
                        f"conformance: block ({i}, {j}) has shape {blk.shape}, "
                        f"expected {(dims[i], dims[j])}"
                    )
                blk.setflags(write=False)
                out_row.append(blk)
            grid.append(tuple(out_row))
        object.__setattr__(self, "block_dims", dims)
        object.__setattr__(self, "blocks", tuple(grid))

    @property
    def n(self) -> int:
        return len(self.block_dims)

    @property
    def size(self) -> int:
        return sum(self.block_dims)

    def __getitem__(self, ij: tuple[int, int]) -> np.ndarray:
        i, j = ij
        return self.blocks[i][j]

    def embed(self) -> np.ndarray:
        return np.block([list(row) for row in self.blocks])

    @classmethod
    def from_dense(cls, A, block_dims: Sequence[int]) -> "BlockMatrix":
        """Partition a square dense matrix along ``block_dims``."""
        A = as_matrix(A)
        dims = [int(d) for d in block_dims]
        if A.shape != (sum(dims), sum(dims)):
            raise DimensionMismatch(
                f"conformance: a {A.shape} matrix cannot be split into blocks {dims}"
            )
        edges = np.concatenate([[0], np.cumsum(dims)])
        blocks = [
            [A[edges[i] : edges[i + 1], edges[j] : edges[j + 1]].copy() for j in range(len(dims))]
            for i in range(len(dims))
        ]
        return cls(dims, blocks)

    @classmethod
    def from_scalars(cls, a) -> "BlockMatrix":
        """Grid of 1 x 1 blocks from a square scalar matrix."""
        a = as_matrix(a)
        return cls.from_dense(a, [1] * a.shape[0])
