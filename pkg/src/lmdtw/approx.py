"""Approximate baselines: multiresolution band refinement and budgeted multiscale.

Both algorithms reuse the textbook solver at coarse scales and a windowed DP
at fine scales; neither guarantees optimality, which is exactly why the exact
linear-memory algorithm exists as a reference.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy.ndimage import maximum_filter1d, minimum_filter1d

from .core import (
    AlignmentResult,
    FeatureSeries,
    InvalidInputError,
    as_series,
    check_cost_kind,
    path_cost,
    precision_dtype,
    require_valid_path,
)
from .oracle import DIAG, LEFT, SELF, TIE_DIAG_FIRST, UP, dtw_full, tie_codes

#: Smallest accepted constant cell budget.
MIN_CELL_BUDGET = 100


@dataclass(frozen=True)
class Window:
    """Per-row inclusive column intervals forming a monotone staircase."""

    lo: np.ndarray
    hi: np.ndarray
    N: int

    def __post_init__(self):
        object.__setattr__(self, "lo", np.asarray(self.lo, dtype=np.int64))
        object.__setattr__(self, "hi", np.asarray(self.hi, dtype=np.int64))

    @property
    def M(self) -> int:
        return len(self.lo)

    def size(self) -> int:
        return int(np.sum(self.hi - self.lo + 1))

    def validate(self):
        lo, hi, M, N = self.lo, self.hi, self.M, self.N
        if len(hi) != M or M < 1:
            raise InvalidInputError("window lo/hi length mismatch")
        if np.any(lo < 0) or np.any(hi >= N) or np.any(lo > hi):
            raise InvalidInputError("window intervals empty or out of range")
        if np.any(np.diff(lo) < 0) or np.any(np.diff(hi) < 0):
            raise InvalidInputError("window staircase not monotone")
        if lo[0] != 0 or hi[-1] != N - 1:
            raise InvalidInputError("window must contain (0,0) and (M-1,N-1)")
        if M > 1 and np.any(lo[1:] > hi[:-1] + 1):
            raise InvalidInputError("window rows disconnected; no warping path fits")

    def contains(self, path) -> bool:
        p = np.asarray(path, dtype=np.int64)
        return bool(np.all((p[:, 1] >= self.lo[p[:, 0]]) & (p[:, 1] <= self.hi[p[:, 0]])))

    @classmethod
    def full(cls, M: int, N: int) -> "Window":
        return cls(np.zeros(M, np.int64), np.full(M, N - 1, np.int64), N)


def coarsen(X: FeatureSeries) -> FeatureSeries:
    """Halve the time resolution by averaging adjacent frame pairs."""
    X = as_series(X)
    M = len(X)
    if M < 2:
        raise InvalidInputError("cannot coarsen a series with fewer than 2 frames")
    half = X.frames[: 2 * (M // 2)].reshape(M // 2, 2, X.dim).mean(axis=1)
    return FeatureSeries(half, X.frame_rate / 2.0)


def _dilate_and_monotonize(lo, hi, radius, M, N) -> Window:
    if radius > 0:
        size = 2 * radius + 1
        lo = minimum_filter1d(lo, size=size, mode="nearest") - radius
        hi = maximum_filter1d(hi, size=size, mode="nearest") + radius
    lo = np.clip(lo, 0, N - 1)
    hi = np.clip(hi, 0, N - 1)
    lo = np.minimum.accumulate(lo[::-1])[::-1]
    hi = np.maximum.accumulate(hi)
    win = Window(lo, hi, N)
    win.validate()
    return win


def expand_window(path, radius: int, M: int, N: int) -> Window:
    """Project a half-resolution path onto the full grid and dilate by radius.

    Each half-resolution cell covers a 2x2 block; uncovered trailing rows and
    columns from odd lengths are patched so the window reaches both corners.
    """
    if radius < 0:
        raise InvalidInputError("radius must be >= 0")
    p = np.asarray(path, dtype=np.int64)
    lo = np.full(M, N, np.int64)
    hi = np.full(M, -1, np.int64)
    for ih, jh in p:
        for r in (2 * ih, 2 * ih + 1):
            if r < M:
                lo[r] = min(lo[r], 2 * jh)
                hi[r] = max(hi[r], min(2 * jh + 1, N - 1))
    if hi[M - 1] < 0:  # odd M: trailing row uncovered by any block
        lo[M - 1] = lo[M - 2]
        hi[M - 1] = hi[M - 2]
    hi[M - 1] = N - 1  # odd N leaves the last column uncovered
    return _dilate_and_monotonize(lo, hi, radius, M, N)


def window_from_path(path, radius: int, M: int, N: int) -> Window:
    """Window of all cells within ``radius`` (rows and columns) of a path."""
    p = np.asarray(path, dtype=np.int64)
    lo = np.full(M, N, np.int64)
    hi = np.full(M, -1, np.int64)
    np.minimum.at(lo, p[:, 0], p[:, 1])
    np.maximum.at(hi, p[:, 0], p[:, 1])
    return _dilate_and_monotonize(lo, hi, radius, M, N)


@njit(cache=True)
def _window_fill(Xa, Ya, lo, hi, offsets, tie):
    M = lo.shape[0]
    d = Xa.shape[1]
    total = offsets[M]
    D = np.empty(total, Xa.dtype)
    P = np.empty(total, np.uint8)
    zero = Xa[0, 0] - Xa[0, 0]
    for i in range(M):
        for j in range(lo[i], hi[i] + 1):
            pos = offsets[i] + (j - lo[i])
            s = zero
            for t in range(d):
                diff = Xa[i, t] - Ya[j, t]
                s += diff * diff
            c = np.sqrt(s)
            if i == 0 and j == 0:
                D[pos] = c
                P[pos] = SELF
                continue
            best = zero
            have = False
            move = SELF
            for m in range(3):
                code = tie[m]
                if code == LEFT:
                    if j - 1 < lo[i]:
                        continue
                    v = D[pos - 1]
                elif code == UP:
                    if i == 0 or j < lo[i - 1] or j > hi[i - 1]:
                        continue
                    v = D[offsets[i - 1] + (j - lo[i - 1])]
                else:
                    if i == 0 or j - 1 < lo[i - 1] or j - 1 > hi[i - 1]:
                        continue
                    v = D[offsets[i - 1] + (j - 1 - lo[i - 1])]
                if (not have) or v < best:
                    best = v
                    move = code
                    have = True
            if have:
                D[pos] = best + c
                P[pos] = move
            else:
                D[pos] = np.inf
                P[pos] = SELF
    return D, P


def constrained_dtw(X, Y, window: Window, cost: str = "euclidean",
                    tie_rule=TIE_DIAG_FIRST, precision=64) -> AlignmentResult:
    """Optimal alignment among paths lying entirely inside the window."""
    check_cost_kind(cost)
    X, Y = as_series(X), as_series(Y)
    M, N = len(X), len(Y)
    if window.M != M or window.N != N:
        raise InvalidInputError("window shape does not match the series")
    window.validate()
    dtype = precision_dtype(precision)
    Xa = np.ascontiguousarray(X.frames, dtype=dtype)
    Ya = np.ascontiguousarray(Y.frames, dtype=dtype)
    widths = window.hi - window.lo + 1
    offsets = np.concatenate([[0], np.cumsum(widths)]).astype(np.int64)
    D, P = _window_fill(Xa, Ya, window.lo, window.hi, offsets, tie_codes(tie_rule))

    i, j = M - 1, N - 1
    rev = [(i, j)]
    while (i, j) != (0, 0):
        move = P[offsets[i] + (j - window.lo[i])]
        if move == LEFT:
            j -= 1
        elif move == UP:
            i -= 1
        elif move == DIAG:
            i -= 1
            j -= 1
        else:
            raise RuntimeError("backtrace escaped the window; window was infeasible")
        rev.append((i, j))
    path = np.array(rev[::-1], dtype=np.int64)
    cells = int(offsets[M])
    return AlignmentResult(
        cost=float(D[-1]),
        path=path,
        cells_processed=cells,
        cells_budget=M * N,
        precision=str(dtype),
        algorithm="constrained",
        peak_table_cells=cells,
    )


def fastdtw(X, Y, cost: str = "euclidean", radius: int = 30,
            tie_rule=TIE_DIAG_FIRST, precision=64) -> AlignmentResult:
    """Recursive multiresolution DTW: coarsen, align, refine within a band.

    Blocks whose short side is at most radius + 2 are solved exactly; the
    worst-case retained cells per level is min(M, N) * (4 * radius + 5).
    """
    check_cost_kind(cost)
    if radius < 0:
        raise InvalidInputError("radius must be >= 0")
    X, Y = as_series(X), as_series(Y)
    if X.dim != Y.dim:
        raise InvalidInputError(f"feature dimension mismatch: {X.dim} vs {Y.dim}")
    M, N = len(X), len(Y)
    stats = []
    total_cells = 0
    peak = 0

    def rec(Xs, Ys):
        nonlocal total_cells, peak
        m, n = len(Xs), len(Ys)
        if min(m, n) <= radius + 2:
            res = dtw_full(Xs, Ys, tie_rule=tie_rule, precision=precision)
            total_cells += res.cells_processed
            peak = max(peak, m * n)
            stats.append({"M": m, "N": n, "cells": m * n, "kind": "exact-base"})
            return res.path
        half = rec(coarsen(Xs), coarsen(Ys))
        win = expand_window(half, radius, m, n)
        res = constrained_dtw(Xs, Ys, win, tie_rule=tie_rule, precision=precision)
        total_cells += res.cells_processed
        peak = max(peak, res.cells_processed)
        stats.append({"M": m, "N": n, "cells": res.cells_processed, "kind": "windowed"})
        return res.path

    path = rec(X, Y)
    dtype = precision_dtype(precision)
    return AlignmentResult(
        cost=path_cost(X, Y, path, dtype=dtype),
        path=path,
        cells_processed=total_cells,
        cells_budget=M * N,
        precision=str(dtype),
        algorithm="fastdtw",
        peak_table_cells=peak,
        level_stats=tuple(stats),
    )


def project_path(path, M_fine: int, N_fine: int) -> np.ndarray:
    """Lift a coarse path one resolution level: each cell maps to its 2x2 block.

    Walks monotonically through the block corners, so the result is always a
    valid warping path at the fine resolution.
    """
    p = np.asarray(path, dtype=np.int64)
    fi, fj = 0, 0
    out = [(0, 0)]

    def walk_to(ti, tj):
        nonlocal fi, fj
        while fi < ti or fj < tj:
            if fi < ti and fj < tj:
                fi += 1
                fj += 1
            elif fi < ti:
                fi += 1
            else:
                fj += 1
            out.append((fi, fj))

    for i, j in p:
        walk_to(min(2 * i + 1, M_fine - 1), min(2 * j + 1, N_fine - 1))
    walk_to(M_fine - 1, N_fine - 1)
    return np.array(out, dtype=np.int64)


def _largest_radius_within(path, M, N, cell_budget):
    """Largest dilation radius whose window fits the budget (or -1 if none)."""
    if window_from_path(path, 0, M, N).size() > cell_budget:
        return -1
    r = 1
    while r < max(M, N) and window_from_path(path, r, M, N).size() <= cell_budget:
        r *= 2
    lo_r, hi_r = r // 2, min(r, max(M, N))
    while lo_r < hi_r:
        mid = (lo_r + hi_r + 1) // 2
        if window_from_path(path, mid, M, N).size() <= cell_budget:
            lo_r = mid
        else:
            hi_r = mid - 1
    return lo_r


def mrmsdtw(X, Y, cost: str = "euclidean", max_cells: int = 10 ** 7,
            coarse_fraction: float = 0.5, tie_rule=TIE_DIAG_FIRST,
            precision=64) -> AlignmentResult:
    """Multiscale DTW under a constant DP-cell budget.

    Coarsens by powers of two until the exact solve fits
    ``coarse_fraction * max_cells``, projects the coarse path back to full
    resolution, then refines inside the largest band that fits the remaining
    budget. With ``max_cells >= M * N`` the answer is exact.
    """
    check_cost_kind(cost)
    if max_cells < MIN_CELL_BUDGET:
        raise InvalidInputError(f"max_cells must be >= {MIN_CELL_BUDGET}")
    if not (0.0 < coarse_fraction < 1.0):
        raise InvalidInputError("coarse_fraction must be in (0, 1)")
    X, Y = as_series(X), as_series(Y)
    if X.dim != Y.dim:
        raise InvalidInputError(f"feature dimension mismatch: {X.dim} vs {Y.dim}")
    M, N = len(X), len(Y)
    dtype = precision_dtype(precision)
    stats = []

    if M * N <= max_cells:
        res = dtw_full(X, Y, tie_rule=tie_rule, precision=precision)
        return AlignmentResult(
            cost=res.cost, path=res.path, cells_processed=M * N, cells_budget=M * N,
            precision=str(dtype), algorithm="mrmsdtw", peak_table_cells=M * N,
            level_stats=({"M": M, "N": N, "cells": M * N, "kind": "exact-base"},),
        )

    coarse_budget = int(max_cells * coarse_fraction)
    levels = [(X, Y)]
    while len(levels[-1][0]) * len(levels[-1][1]) > coarse_budget:
        Xs, Ys = levels[-1]
        if len(Xs) < 2 or len(Ys) < 2:
            break
        levels.append((coarsen(Xs), coarsen(Ys)))
    Xc, Yc = levels[-1]
    res = dtw_full(Xc, Yc, tie_rule=tie_rule, precision=precision)
    total_cells = res.cells_processed
    peak = res.cells_processed
    stats.append({"M": len(Xc), "N": len(Yc), "cells": res.cells_processed,
                  "kind": "exact-base"})
    path = res.path
    for Xs, Ys in reversed(levels[:-1]):
        path = project_path(path, len(Xs), len(Ys))

    refine_budget = max_cells - coarse_budget
    r = _largest_radius_within(path, M, N, refine_budget)
    if r >= 0:
        win = window_from_path(path, r, M, N)
        ref = constrained_dtw(X, Y, win, tie_rule=tie_rule, precision=precision)
        total_cells += ref.cells_processed
        peak = max(peak, ref.cells_processed)
        stats.append({"M": M, "N": N, "cells": ref.cells_processed,
                      "kind": "windowed", "radius": r})
        path = ref.path
    else:
        stats.append({"M": M, "N": N, "cells": 0, "kind": "projection-only"})

    require_valid_path(path, M, N)
    return AlignmentResult(
        cost=path_cost(X, Y, path, dtype=dtype),
        path=path,
        cells_processed=total_cells,
        cells_budget=M * N,
        precision=str(dtype),
        algorithm="mrmsdtw",
        peak_table_cells=peak,
        level_stats=tuple(stats),
    )
