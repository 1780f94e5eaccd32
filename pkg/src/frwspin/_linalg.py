from __future__ import annotations

import numpy as np

from .dual import primal

MINKOWSKI = np.diag([1.0, -1.0, -1.0, -1.0])
SPACE_INVERSION = MINKOWSKI.copy()


def diag(*entries):
    """Batched diagonal matrix from scalar fields that may be duals.

    All entries must share one batch shape (plain zeros fill the rest).
    """
    shape = np.broadcast_shapes(*(np.shape(primal(e)) for e in entries))
    zero = np.zeros(shape)
    entries = [e + zero for e in entries]
    n = len(entries)
    rows = [np.stack([entries[i] if i == j else zero for j in range(n)], axis=-1)
            for i in range(n)]
    return np.stack(rows, axis=-2)

