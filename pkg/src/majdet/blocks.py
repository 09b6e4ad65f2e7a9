"""Partitions, diagonal-block extraction, direct sums, principal submatrices.

Blocks are contiguous along the diagonal; non-contiguous selections go
through principal_submatrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadPartition, DimensionMismatch, IndexOutOfRange
from .linalg import as_square


@dataclass(frozen=True)
class Partition:
    """Ordered block sizes (n_1, ..., n_k), each >= 1."""

    sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if len(sizes) < 1 or any(s < 1 for s in sizes):
            raise BadPartition(f"block sizes must be positive integers, got {sizes}")

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def k(self) -> int:
        return len(self.sizes)

    def offsets(self) -> list[tuple[int, int]]:
        """Half-open (start, stop) ranges of each block."""
        out = []
        start = 0
        for s in self.sizes:
            out.append((start, start + s))
            start += s
        return out


def validate_partition(sizes, n: int) -> Partition:
    """Partition whose sizes sum to the ambient dimension n."""
    part = Partition(tuple(sizes))
    if part.n != n:
        raise BadPartition(f"sizes {part.sizes} sum to {part.n}, expected {n}")
    return part


def diag_blocks(c, part: Partition) -> list[np.ndarray]:
    """The contiguous diagonal blocks of c under the partition (copies)."""
    m = as_square(c)
    if m.shape[0] != part.n:
        raise DimensionMismatch(f"matrix is {m.shape[0]}x{m.shape[0]}, partition needs {part.n}")
    return [m[lo:hi, lo:hi].copy() for lo, hi in part.offsets()]


def direct_sum(blocks) -> np.ndarray:
    """Block-diagonal assembly of square matrices."""
    mats = [as_square(b) for b in blocks]
    n = sum(b.shape[0] for b in mats)
    out = np.zeros((n, n))
    start = 0
    for b in mats:
        stop = start + b.shape[0]
        out[start:stop, start:stop] = b
        start = stop
    return out


def principal_submatrix(a, idx) -> np.ndarray:
    """Rows and columns of a restricted to the 0-based index set idx."""
    m = as_square(a)
    indices = [int(i) for i in idx]
    if not indices:
        raise IndexOutOfRange("index set must be nonempty")
    if any(i < 0 or i >= m.shape[0] for i in indices):
        raise IndexOutOfRange(f"indices {indices} out of range for n={m.shape[0]}")
    if any(b <= a_ for a_, b in zip(indices, indices[1:])):
        raise IndexOutOfRange(f"indices must be strictly increasing, got {indices}")
    sel = np.array(indices)
    return m[np.ix_(sel, sel)].copy()
