"""Linear-memory anti-diagonal DP engine.

Fills the accumulated-cost table diagonal by diagonal, keeping only three
consecutive diagonals of accumulated cost plus the matching raw-cost
diagonals (at most 6*min(M, N) retained values). The run can stop on any
diagonal and hand back the buffer states, which is what the divide-and-conquer
pivot search needs.

Cells on diagonal k are ordered by increasing j: idx -> (i, j) with
i = min(k, M-1) - idx and j = k - i.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import (
    InvalidInputError,
    as_series,
    check_cost_kind,
    frame_costs,
    precision_dtype,
)


def diag_length(k: int, M: int, N: int) -> int:
    """Number of grid cells on anti-diagonal k of an M x N grid."""
    if not (0 <= k <= M + N - 2):
        raise InvalidInputError(f"diagonal {k} out of range for {M}x{N}")
    return min(k, M - 1, N - 1, M + N - 2 - k) + 1


def diag_to_grid(k: int, idx: int, M: int, N: int) -> tuple[int, int]:
    """Grid coordinates of position idx on diagonal k (increasing-j order)."""
    if not (0 <= idx < diag_length(k, M, N)):
        raise InvalidInputError(f"idx {idx} out of range on diagonal {k} of {M}x{N}")
    i = min(k, M - 1) - idx
    return i, k - i


def diag_cells(k: int, M: int, N: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized (i, j) arrays for every cell on diagonal k."""
    L = diag_length(k, M, N)
    i = min(k, M - 1) - np.arange(L)
    return i, k - i


@dataclass(frozen=True)
class DiagBuffers:
    """Engine state after processing diagonals 0..k_last.

    ``d[2]`` / ``c[2]`` hold accumulated and raw costs on diagonal k_last,
    ``d[1]``/``c[1]`` the diagonal before it, ``d[0]``/``c[0]`` the one before
    that. ``peak_values`` counts the most accumulated+raw values retained at
    any point of the run.
    """

    d: tuple
    c: tuple
    k_last: int
    M: int
    N: int
    reverse: bool
    cells_processed: int
    peak_values: int

    def diagonal_index(self, buffer_slot: int) -> int:
        return self.k_last - 2 + buffer_slot


@njit(cache=True)
def _advance(Xa, Ya, D0, D1, C0, C1, k_from, k_to):
    """Process diagonals k_from..k_to given buffers for k_from-2 and k_from-1.

    Returns accumulated and raw-cost buffers for the last three diagonals plus
    the number of cells evaluated. Requires k_from >= 1; for k_from == 1 the
    k_from-2 buffers are unused placeholders.
    """
    M = Xa.shape[0]
    N = Ya.shape[0]
    d = Xa.shape[1]
    zero = Xa[0, 0] - Xa[0, 0]
    Dm3, Dm2, Dm1 = D0, D0, D1
    Cm3, Cm2, Cm1 = C0, C0, C1
    cells = 0
    for k in range(k_from, k_to + 1):
        L = min(k, M - 1, N - 1, M + N - 2 - k) + 1
        D2 = np.empty(L, Xa.dtype)
        C2 = np.empty(L, Xa.dtype)
        i0 = min(k, M - 1)
        i0m1 = min(k - 1, M - 1)
        i0m2 = min(k - 2, M - 1)
        for idx in range(L):
            i = i0 - idx
            j = k - i
            s = zero
            for t in range(d):
                diff = Xa[i, t] - Ya[j, t]
                s += diff * diff
            c = np.sqrt(s)
            C2[idx] = c
            best = zero
            have = False
            if j > 0:
                best = Dm1[i0m1 - i]
                have = True
            if i > 0:
                v = Dm1[i0m1 - (i - 1)]
                if (not have) or v < best:
                    best = v
            if i > 0 and j > 0:
                v = Dm2[i0m2 - (i - 1)]
                if v < best:
                    best = v
            D2[idx] = best + c
        cells += L
        Dm3, Dm2, Dm1 = Dm2, Dm1, D2
        Cm3, Cm2, Cm1 = Cm2, Cm1, C2
    return Dm3, Dm2, Dm1, Cm3, Cm2, Cm1, cells


def _advance_parallel(Xa, Ya, D0, D1, C0, C1, k_from, k_to):
    """Same update as _advance but vectorized across each whole diagonal.

    Every cell of a diagonal reads only the two previous diagonals, so the
    within-diagonal computation is order-free; this numpy formulation is the
    data-parallel schedule and is bit-identical to the sequential kernel.
    """
    M, N = Xa.shape[0], Ya.shape[0]
    inf = Xa.dtype.type(np.inf)
    Dm3, Dm2, Dm1 = D0, D0, D1
    Cm3, Cm2, Cm1 = C0, C0, C1
    cells = 0
    for k in range(k_from, k_to + 1):
        i, j = diag_cells(k, M, N)
        L = len(i)
        C2 = frame_costs(Xa[i], Ya[j])
        i0m1 = min(k - 1, M - 1)
        best = np.full(L, inf, dtype=Xa.dtype)
        left_ok = j > 0
        gather = Dm1[np.clip(i0m1 - i, 0, len(Dm1) - 1)]
        np.minimum(best, np.where(left_ok, gather, inf), out=best)
        up_ok = i > 0
        gather = Dm1[np.clip(i0m1 - (i - 1), 0, len(Dm1) - 1)]
        np.minimum(best, np.where(up_ok, gather, inf), out=best)
        if k >= 2:
            i0m2 = min(k - 2, M - 1)
            gather = Dm2[np.clip(i0m2 - (i - 1), 0, len(Dm2) - 1)]
            np.minimum(best, np.where(left_ok & up_ok, gather, inf), out=best)
        D2 = best + C2
        cells += L
        Dm3, Dm2, Dm1 = Dm2, Dm1, D2
        Cm3, Cm2, Cm1 = Cm2, Cm1, C2
    return Dm3, Dm2, Dm1, Cm3, Cm2, Cm1, cells


def peak_retained_values(kstop: int, M: int, N: int) -> int:
    """Most accumulated+raw diagonal values live at once during a run to kstop."""
    peak = 0
    for k in range(kstop + 1):
        window = 0
        for kk in (k - 2, k - 1, k):
            if 0 <= kk <= M + N - 2:
                window += diag_length(kk, M, N)
        peak = max(peak, 2 * window)
    return peak


def diag_dtw(X, Y, kstop: int, direction: str = "forward", cost: str = "euclidean",
             precision=64, parallel: bool = False, on_cells=None) -> DiagBuffers:
    """Run the wavefront engine through diagonals 0..kstop inclusive.

    direction="reverse" runs on the reversed series (the DP grid of the
    reversed problem). ``on_cells`` is called with incremental cell counts as
    batches of diagonals complete.
    """
    check_cost_kind(cost)
    X, Y = as_series(X), as_series(Y)
    if X.dim != Y.dim:
        raise InvalidInputError(f"feature dimension mismatch: {X.dim} vs {Y.dim}")
    M, N = len(X), len(Y)
    if direction not in ("forward", "reverse"):
        raise InvalidInputError(f"direction must be forward or reverse, got {direction!r}")
    if not (2 <= kstop <= M + N - 2):
        raise InvalidInputError(f"kstop={kstop} out of range [2, {M + N - 2}] for {M}x{N}")
    dtype = precision_dtype(precision)
    frames_x = X.frames[::-1] if direction == "reverse" else X.frames
    frames_y = Y.frames[::-1] if direction == "reverse" else Y.frames
    Xa = np.ascontiguousarray(frames_x, dtype=dtype)
    Ya = np.ascontiguousarray(frames_y, dtype=dtype)

    # Diagonal 0 by hand; the kernel takes over from k = 1.
    c00 = frame_costs(Xa[:1], Ya[:1])
    empty = np.empty(0, dtype)
    D = (empty, empty, c00.copy())
    C = (empty, empty, c00.copy())
    cells_total = 1
    if on_cells is not None:
        on_cells(1)

    advance = _advance_parallel if parallel else _advance
    # Chunk the diagonal loop so progress lands at least every ~1% of cells.
    chunk = max(1, (M + N) // 100)
    k = 1
    while k <= kstop:
        k_to = min(kstop, k + chunk - 1)
        out = advance(Xa, Ya, D[1], D[2], C[1], C[2], k, k_to)
        D = (out[0], out[1], out[2])
        C = (out[3], out[4], out[5])
        n = out[6]
        cells_total += n
        if on_cells is not None:
            on_cells(n)
        k = k_to + 1
    return DiagBuffers(
        d=D, c=C, k_last=kstop, M=M, N=N,
        reverse=(direction == "reverse"),
        cells_processed=cells_total,
        peak_values=peak_retained_values(kstop, M, N),
    )
