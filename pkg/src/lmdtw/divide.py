"""Exact DTW alignment in linear memory by divide and conquer.

Run the wavefront engine forward to the middle diagonals and backward (on the
reversed series) to the matching diagonals, combine the overlapping buffers
to locate a pivot cell that provably sits on an optimal warping path, then
recurse on the two sub-blocks either side of the pivot. Sub-blocks below the
``min_dim`` cutoff are finished with the textbook algorithm.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .core import (
    AlignmentResult,
    InvalidInputError,
    as_series,
    check_cost_kind,
    path_cost,
    precision_dtype,
)
from .diagonal import diag_cells, diag_dtw, diag_length, diag_to_grid
from .oracle import TIE_DIAG_FIRST, dtw_full


@dataclass(frozen=True)
class Pivot:
    """A cell guaranteed to lie on an optimal warping path.

    ``total_at_pivot`` is forward_D + backward_D - C at the cell, which equals
    the optimal alignment cost up to accumulation rounding.
    """

    i: int
    j: int
    total_at_pivot: float
    diagonal_k: int


@dataclass(frozen=True)
class LinMdtwConfig:
    min_dim: int = 500
    precision: int = 64
    tie_rule: tuple = TIE_DIAG_FIRST
    pivot_tie_rule: str = "lowest"  # lowest diagonal, then lowest idx
    parallel_halves: bool = False
    parallel_diagonals: bool = False

    def __post_init__(self):
        if self.min_dim < 2:
            raise InvalidInputError("min_dim must be >= 2")
        if self.pivot_tie_rule not in ("lowest", "highest"):
            raise InvalidInputError(f"unknown pivot_tie_rule {self.pivot_tie_rule!r}")


class _Instrument:
    """Thread-safe cells counter plus memory peaks and the progress callback."""

    def __init__(self, budget: int, progress=None):
        self.budget = budget
        self.progress = progress
        self.cells = 0
        self.peak_diag_values = 0
        self.peak_table_cells = 0
        self.pivots = []
        self._lock = threading.Lock()
        self._next_report = 0

    def add_cells(self, n: int):
        with self._lock:
            self.cells += n
            fire = self.progress is not None and self.cells >= self._next_report
            if fire:
                # At least one report per 1% of the 2MN budget.
                self._next_report = self.cells + max(1, self.budget // 100)
                cells = self.cells
        if fire:
            self.progress(cells, self.budget)

    def saw_diag_run(self, peak_values: int):
        with self._lock:
            self.peak_diag_values = max(self.peak_diag_values, peak_values)

    def saw_table(self, cells: int):
        with self._lock:
            self.peak_table_cells = max(self.peak_table_cells, cells)

    def record_pivot(self, entry):
        with self._lock:
            self.pivots.append(entry)


def find_pivot(X, Y, cost: str = "euclidean", precision=64, parallel: bool = False,
               pivot_tie_rule: str = "lowest", _inst: _Instrument | None = None) -> Pivot:
    """Locate a cell on an optimal warping path via half-runs from both ends.

    The forward run stops on diagonal ceil((M+N-1)/2); the backward run (on the
    reversed series) stops one diagonal later when M+N-1 is even, so the two
    runs overlap on exactly three diagonals. On those diagonals
    forward_D + backward_D - forward_C equals the total cost of the best path
    through each cell, and its minimum is the optimal alignment cost.
    """
    check_cost_kind(cost)
    X, Y = as_series(X), as_series(Y)
    M, N = len(X), len(Y)
    if M + N - 2 < 2:
        raise InvalidInputError(f"{M}x{N} too small for a pivot search; use dtw_full")
    K = M + N - 1
    kstop_f = (K + 1) // 2
    kstop_b = kstop_f + 1 if K % 2 == 0 else kstop_f
    on_cells = (lambda n: _inst.add_cells(n)) if _inst is not None else None
    fwd = diag_dtw(X, Y, kstop_f, "forward", cost, precision, parallel, on_cells)
    bwd = diag_dtw(X, Y, kstop_b, "reverse", cost, precision, parallel, on_cells)
    if _inst is not None:
        _inst.saw_diag_run(fwd.peak_values)
        _inst.saw_diag_run(bwd.peak_values)

    best = None  # (total, k, idx)
    for m in range(3):
        k = kstop_f - 2 + m
        df = fwd.d[m]
        cf = fwd.c[m]
        db = bwd.d[2 - m]  # reversed-grid diagonal M+N-2-k
        i, j = diag_cells(k, M, N)
        idx_b = min(M + N - 2 - k, M - 1) - (M - 1 - i)
        total = df + db[idx_b] - cf
        order = np.arange(len(total)) if pivot_tie_rule == "lowest" else np.arange(len(total))[::-1]
        t = total[order]
        mi = int(np.argmin(t))
        cand = (float(t[mi]), k, int(order[mi]))
        if best is None:
            best = cand
        elif pivot_tie_rule == "lowest":
            if cand[0] < best[0]:
                best = cand
        else:
            if cand[0] <= best[0]:
                best = cand
    total, k, idx = best
    pi, pj = diag_to_grid(k, idx, M, N)
    return Pivot(i=pi, j=pj, total_at_pivot=total, diagonal_k=k)


def _solve(X, Y, cfg: LinMdtwConfig, inst: _Instrument, i_off: int, j_off: int,
           allow_threads: bool) -> np.ndarray:
    M, N = len(X), len(Y)
    # M+N <= 5 keeps the pivot window off the grid corners, whose "pivots"
    # would not shrink the problem.
    if M < cfg.min_dim or N < cfg.min_dim or M + N <= 5:
        res = dtw_full(X, Y, tie_rule=cfg.tie_rule, precision=cfg.precision)
        inst.add_cells(M * N)
        inst.saw_table(M * N)
        return res.path
    piv = find_pivot(X, Y, precision=cfg.precision, parallel=cfg.parallel_diagonals,
                     pivot_tie_rule=cfg.pivot_tie_rule, _inst=inst)
    inst.record_pivot(
        {"i": i_off + piv.i, "j": j_off + piv.j, "i_off": i_off, "j_off": j_off,
         "M": M, "N": N, "sub_i": piv.i, "sub_j": piv.j,
         "total_at_pivot": piv.total_at_pivot, "diagonal_k": piv.diagonal_k}
    )
    left_args = (X.view(0, piv.i + 1), Y.view(0, piv.j + 1), cfg, inst, i_off, j_off)
    right_args = (X.view(piv.i, M), Y.view(piv.j, N), cfg, inst,
                  i_off + piv.i, j_off + piv.j)
    if allow_threads and min(M, N) >= 4 * cfg.min_dim:
        with ThreadPoolExecutor(max_workers=2) as pool:
            fl = pool.submit(_solve, *left_args, False)
            fr = pool.submit(_solve, *right_args, False)
            left, right = fl.result(), fr.result()
    else:
        left = _solve(*left_args, allow_threads)
        right = _solve(*right_args, allow_threads)
    # The pivot is the last cell of the left path and the first of the right.
    right = right + np.array([[piv.i, piv.j]], dtype=np.int64)
    return np.concatenate([left, right[1:]], axis=0)


def linmdtw(X, Y, cost: str = "euclidean", config: LinMdtwConfig | None = None,
            progress=None, **overrides) -> AlignmentResult:
    """Exact DTW alignment using linear memory.

    ``progress`` is called with (cells_processed, 2*M*N) as diagonal batches
    complete. Keyword overrides (min_dim=..., precision=...) build a config on
    the fly.
    """
    check_cost_kind(cost)
    cfg = config or LinMdtwConfig(**overrides)
    if config is not None and overrides:
        raise InvalidInputError("pass either a config object or keyword overrides, not both")
    X, Y = as_series(X), as_series(Y)
    if X.dim != Y.dim:
        raise InvalidInputError(f"feature dimension mismatch: {X.dim} vs {Y.dim}")
    M, N = len(X), len(Y)
    inst = _Instrument(budget=2 * M * N, progress=progress)
    path = _solve(X, Y, cfg, inst, 0, 0, cfg.parallel_halves)
    if progress is not None:
        progress(inst.cells, inst.budget)
    dtype = precision_dtype(cfg.precision)
    cost_value = path_cost(X, Y, path, dtype=dtype)
    return AlignmentResult(
        cost=cost_value,
        path=path,
        cells_processed=inst.cells,
        cells_budget=2 * M * N,
        precision=str(dtype),
        algorithm="linmdtw",
        peak_diag_values=inst.peak_diag_values,
        peak_table_cells=inst.peak_table_cells,
        pivot_trace=tuple(inst.pivots),
    )


def cells_ratio(result: AlignmentResult, M: int, N: int) -> float:
    """Cells evaluated divided by the full-table cell count M*N."""
    return result.cells_processed / (M * N)
