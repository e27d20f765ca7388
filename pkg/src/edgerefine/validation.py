"""Input validation shared by the estimators and the CLI."""

from __future__ import annotations

import numpy as np
from sklearn.utils import check_array

from .graph import Graph
from .partition import PartitionError, parse_alpha


def check_graph(X, n_vertices: int | None = None) -> Graph:
    """Coerce ``X`` to a :class:`Graph`.

    Accepts a ``Graph`` or an ``(m, 2)`` integer array of compact vertex ids.
    """
    if isinstance(X, Graph):
        if n_vertices is not None and n_vertices != X.n:
            raise ValueError(f"n_vertices={n_vertices} disagrees with graph n={X.n}")
        return X
    arr = check_array(X, dtype=np.int64, ensure_2d=True)
    if arr.shape[1] != 2:
        raise ValueError(f"edge array must have 2 columns, got {arr.shape[1]}")
    if arr.min() < 0:
        raise ValueError("vertex ids must be non-negative")
    n = int(arr.max()) + 1 if n_vertices is None else int(n_vertices)
    return Graph(n, map(tuple, arr.tolist()))


def check_k(k) -> int:
    if isinstance(k, (bool, np.bool_)) or int(k) != k or k < 1:
        raise PartitionError(f"k must be a positive integer, got {k!r}")
    return int(k)


def check_assignment(y, m: int, k: int | None = None) -> tuple[list[int], int]:
    """Validate a per-edge part assignment; infer ``k`` when not given."""
    arr = np.asarray(y)
    if arr.ndim != 1:
        raise PartitionError(f"assignment must be 1-D, got shape {arr.shape}")
    if arr.shape[0] != m:
        raise PartitionError(f"assignment has {arr.shape[0]} entries, graph has {m} edges")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise PartitionError("assignment entries must be integers")
    assign = [int(v) for v in arr.tolist()]
    if assign and min(assign) < 0:
        raise PartitionError("part ids must be non-negative")
    inferred = max(assign) + 1 if assign else 1
    if k is None:
        k = inferred
    k = check_k(k)
    if inferred > k:
        raise PartitionError(f"part id {inferred - 1} out of range for k={k}")
    return assign, k


def check_alpha(alpha):
    return parse_alpha(alpha)
