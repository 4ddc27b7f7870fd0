"""Integer confusion-matrix simplex enumeration.

The evaluation domain is the set of all (tp, fn, fp, tn) count tuples with
a fixed total n.  Enumeration order is lexicographic with tp as the major
key, then fn, then fp (tn is implied), which makes every export and API
response byte-deterministic.
"""

from math import comb
from typing import Iterator

import numpy as np

from .confusion import ConfusionMatrix

__all__ = ["grid_size", "grid_counts", "enumerate_grid"]


def grid_size(n: int) -> int:
    """Number of integer 4-tuples with sum n: C(n+3, 3)."""
    if n < 1:
        raise ValueError(f"resolution must be >= 1, got {n}")
    return comb(n + 3, 3)


def grid_counts(n: int) -> np.ndarray:
    """All count tuples at resolution n as an (M, 4) int64 array.

    Rows are in lexicographic order (tp major, then fn, then fp) and
    M = C(n+3, 3).  This is the bulk companion of :func:`enumerate_grid`.
    """
    if n < 1:
        raise ValueError(f"resolution must be >= 1, got {n}")
    blocks = []
    for tp in range(n + 1):
        m = n - tp
        # for each fn in 0..m, fp runs over 0..m-fn
        sizes = np.arange(m + 1, 0, -1)
        fn = np.repeat(np.arange(m + 1), sizes)
        offsets = np.repeat(np.cumsum(sizes) - sizes, sizes)
        fp = np.arange(len(fn)) - offsets
        tn = m - fn - fp
        block = np.empty((len(fn), 4), dtype=np.int64)
        block[:, 0] = tp
        block[:, 1] = fn
        block[:, 2] = fp
        block[:, 3] = tn
        blocks.append(block)
    out = np.concatenate(blocks, axis=0)
    assert out.shape[0] == grid_size(n)
    return out


def enumerate_grid(n: int) -> Iterator[ConfusionMatrix]:
    """Yield every ConfusionMatrix with total n exactly once.

    Same lexicographic order as :func:`grid_counts`.
    """
    if n < 1:
        raise ValueError(f"resolution must be >= 1, got {n}")
    for tp in range(n + 1):
        for fn_ in range(n - tp + 1):
            for fp in range(n - tp - fn_ + 1):
                yield ConfusionMatrix(tp, fn_, fp, n - tp - fn_ - fp)
