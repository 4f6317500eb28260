"""Textbook quadratic-memory DTW with backpointers.

This is the ground truth for every other algorithm here and the base-case
solver for the divide-and-conquer recursion. It materializes the full M x N
accumulated-cost table plus a backpointer grid, so memory is O(M*N) by design.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .core import (
    AlignmentResult,
    FeatureSeries,
    InvalidInputError,
    as_series,
    check_cost_kind,
    precision_dtype,
)

# Backpointer codes. SELF marks the (0, 0) corner.
LEFT, UP, DIAG, SELF = 0, 1, 2, 3

#: Default move precedence on ties: diagonal beats left beats up.
TIE_DIAG_FIRST = ("diag", "left", "up")
#: Alternate rule for the tie-breaking comparison: left beats diagonal.
TIE_LEFT_FIRST = ("left", "diag", "up")

_MOVE_CODES = {"left": LEFT, "up": UP, "diag": DIAG}


def tie_codes(tie_rule) -> np.ndarray:
    """Convert a precedence tuple like ("diag", "left", "up") to int8 codes."""
    if sorted(tie_rule) != sorted(_MOVE_CODES):
        raise InvalidInputError(f"tie rule must order {tuple(_MOVE_CODES)}, got {tie_rule!r}")
    return np.array([_MOVE_CODES[m] for m in tie_rule], dtype=np.int8)


@njit(cache=True)
def _dtw_fill(Xa, Ya, tie):
    M = Xa.shape[0]
    N = Ya.shape[0]
    d = Xa.shape[1]
    D = np.empty((M, N), dtype=Xa.dtype)
    P = np.empty((M, N), dtype=np.uint8)
    zero = Xa[0, 0] - Xa[0, 0]
    for i in range(M):
        for j in range(N):
            s = zero
            for t in range(d):
                diff = Xa[i, t] - Ya[j, t]
                s += diff * diff
            c = np.sqrt(s)
            if i == 0 and j == 0:
                D[i, j] = c
                P[i, j] = SELF
                continue
            best = zero
            have = False
            move = SELF
            for m in range(3):
                code = tie[m]
                if code == LEFT:
                    if j == 0:
                        continue
                    v = D[i, j - 1]
                elif code == UP:
                    if i == 0:
                        continue
                    v = D[i - 1, j]
                else:
                    if i == 0 or j == 0:
                        continue
                    v = D[i - 1, j - 1]
                if (not have) or v < best:
                    best = v
                    move = code
                    have = True
            D[i, j] = best + c
            P[i, j] = move
    return D, P


def backtrace(P: np.ndarray) -> np.ndarray:
    """Follow backpointers from the bottom-right corner to (0, 0)."""
    M, N = P.shape
    i, j = M - 1, N - 1
    rev = [(i, j)]
    while (i, j) != (0, 0):
        move = P[i, j]
        if move == LEFT:
            j -= 1
        elif move == UP:
            i -= 1
        elif move == DIAG:
            i -= 1
            j -= 1
        else:
            raise RuntimeError(f"backtrace hit SELF at ({i}, {j}) before (0, 0)")
        rev.append((i, j))
    return np.array(rev[::-1], dtype=np.int64)


def dtw_full(X, Y, cost: str = "euclidean", tie_rule=TIE_DIAG_FIRST,
             precision=64) -> AlignmentResult:
    """Exact DTW by filling the full accumulated-cost table row by row.

    Returns the optimal cost, a backtraced optimal path, and cells_processed
    equal to M*N. Raises MemoryError for inputs whose table does not fit; that
    failure mode is exactly what the linear-memory algorithm avoids.
    """
    check_cost_kind(cost)
    X, Y = as_series(X), as_series(Y)
    if X.dim != Y.dim:
        raise InvalidInputError(f"feature dimension mismatch: {X.dim} vs {Y.dim}")
    dtype = precision_dtype(precision)
    Xa = np.ascontiguousarray(X.frames, dtype=dtype)
    Ya = np.ascontiguousarray(Y.frames, dtype=dtype)
    D, P = _dtw_fill(Xa, Ya, tie_codes(tie_rule))
    path = backtrace(P)
    M, N = len(X), len(Y)
    return AlignmentResult(
        cost=float(D[-1, -1]),
        path=path,
        cells_processed=M * N,
        cells_budget=M * N,
        precision=str(dtype),
        algorithm="dtw",
        peak_table_cells=M * N,
    )


def accumulated_cost_table(X, Y, precision=64) -> np.ndarray:
    """Full D(i, j) table (test instrumentation for the wavefront engine)."""
    X, Y = as_series(X), as_series(Y)
    dtype = precision_dtype(precision)
    Xa = np.ascontiguousarray(X.frames, dtype=dtype)
    Ya = np.ascontiguousarray(Y.frames, dtype=dtype)
    D, _ = _dtw_fill(Xa, Ya, tie_codes(TIE_DIAG_FIRST))
    return D
