"""Alignment-discrepancy distributions and closed-form memory accounting."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import DEFAULT_FPS, InvalidInputError, as_path

#: Time thresholds (seconds) reported by default: about 1 frame, 2 frames,
#: half a second, and a second at ~43 fps.
DEFAULT_THRESHOLDS_S = (0.023, 0.047, 0.510, 1.0)
#: Frame-count thresholds for the frames-based report mode.
DEFAULT_THRESHOLDS_FRAMES = (1, 2, 22, 43)

ALGORITHMS = ("textbook", "fastdtw", "linmdtw", "mrmsdtw")


@dataclass(frozen=True)
class DiscrepancyReport:
    """Multiset of nonnegative frame offsets between two warping paths."""

    errors: np.ndarray
    fps: float = DEFAULT_FPS

    def __post_init__(self):
        arr = np.asarray(self.errors, dtype=np.int64)
        if arr.ndim != 1 or np.any(arr < 0):
            raise InvalidInputError("errors must be a 1-D array of nonnegative offsets")
        object.__setattr__(self, "errors", arr)
        if self.fps <= 0:
            raise InvalidInputError("fps must be positive")


def _row_intervals(path, M):
    lo = np.full(M, np.iinfo(np.int64).max, np.int64)
    hi = np.full(M, -1, np.int64)
    np.minimum.at(lo, path[:, 0], path[:, 1])
    np.maximum.at(hi, path[:, 0], path[:, 1])
    return lo, hi


def discrepancy(W1, W2, fps: float = DEFAULT_FPS) -> DiscrepancyReport:
    """Frame-offset distribution of W1 against W2.

    For every (i, j) in W1 the row error is the distance from j to the nearest
    column W2 pairs with row i, and the column error is the distance from i to
    the nearest row W2 pairs with column j. Both multisets are concatenated.
    The report is directional in W1; run both directions and merge for a fully
    symmetric figure.
    """
    p1, p2 = as_path(W1), as_path(W2)
    if tuple(p1[0]) != tuple(p2[0]) or tuple(p1[-1]) != tuple(p2[-1]):
        raise InvalidInputError("paths have mismatched endpoints; not comparable")
    M = int(p1[-1, 0]) + 1
    N = int(p1[-1, 1]) + 1
    # A path visits every row and every column, so intervals are never empty.
    rlo, rhi = _row_intervals(p2, M)
    clo_t, chi_t = _row_intervals(p2[:, ::-1], N)
    row_err = np.maximum(0, np.maximum(rlo[p1[:, 0]] - p1[:, 1], p1[:, 1] - rhi[p1[:, 0]]))
    col_err = np.maximum(0, np.maximum(clo_t[p1[:, 1]] - p1[:, 0], p1[:, 0] - chi_t[p1[:, 1]]))
    return DiscrepancyReport(np.concatenate([row_err, col_err]), fps)


def merge_reports(a: DiscrepancyReport, b: DiscrepancyReport) -> DiscrepancyReport:
    if a.fps != b.fps:
        raise InvalidInputError("cannot merge reports with different fps")
    return DiscrepancyReport(np.concatenate([a.errors, b.errors]), a.fps)


def proportion_below(report: DiscrepancyReport,
                     thresholds_seconds=DEFAULT_THRESHOLDS_S) -> list[float]:
    """Fraction of errors at most each threshold, after frames -> seconds."""
    seconds = report.errors / report.fps
    return [float(np.mean(seconds <= t)) for t in thresholds_seconds]


def proportion_below_frames(report: DiscrepancyReport,
                            thresholds_frames=DEFAULT_THRESHOLDS_FRAMES) -> list[float]:
    """Frames-based variant: fraction of errors at most each frame count."""
    return [float(np.mean(report.errors <= t)) for t in thresholds_frames]


@dataclass(frozen=True)
class MemoryEstimate:
    algorithm: str
    cells: int
    parameters: dict = field(default_factory=dict)

    @property
    def bytes(self) -> int:
        # 32-bit accumulated-cost cells.
        return 4 * self.cells


def memory_estimate(algorithm: str, M: int, N: int, delta: int | None = None,
                    budget: int | None = None) -> MemoryEstimate:
    """Closed-form count of accumulated-cost cells each algorithm must hold.

    textbook: M*N; fastdtw: min(M,N)*(4*delta+5); linmdtw: 6*min(M,N);
    mrmsdtw: its constant budget.
    """
    if M < 1 or N < 1:
        raise InvalidInputError("M, N must be >= 1")
    params = {"M": M, "N": N}
    if algorithm == "textbook":
        cells = M * N
    elif algorithm == "fastdtw":
        if delta is None or delta < 0:
            raise InvalidInputError("fastdtw estimate needs a band radius delta >= 0")
        cells = min(M, N) * (4 * delta + 5)
        params["delta"] = delta
    elif algorithm == "linmdtw":
        cells = 6 * min(M, N)
    elif algorithm == "mrmsdtw":
        if budget is None or budget < 1:
            raise InvalidInputError("mrmsdtw estimate needs a positive cell budget")
        cells = budget
        params["budget"] = budget
    else:
        raise InvalidInputError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")
    return MemoryEstimate(algorithm, int(cells), params)


def format_bytes(n: int) -> str:
    """Render a byte count with both binary and decimal prefixes."""

    def scaled(base, units):
        v = float(n)
        for u in units:
            if v < base or u == units[-1]:
                return f"{v:.3g} {u}"
            v /= base
        return f"{v:.3g} {units[-1]}"

    binary = scaled(1024.0, ["B", "KiB", "MiB", "GiB", "TiB"])
    decimal = scaled(1000.0, ["B", "KB", "MB", "GB", "TB"])
    return f"{binary} ({decimal})"


def save_report(report: DiscrepancyReport, fileobj,
                thresholds_seconds=DEFAULT_THRESHOLDS_S):
    """Write a report as delimited text: proportions header, one error per line."""
    props = proportion_below(report, thresholds_seconds)
    fileobj.write(f"# fps={report.fps!r}\n")
    fileobj.write(f"# count={len(report.errors)}\n")
    fileobj.write("# thresholds_s=" + ",".join(repr(t) for t in thresholds_seconds) + "\n")
    fileobj.write("# proportions=" + ",".join(f"{p:.6f}" for p in props) + "\n")
    for e in report.errors:
        fileobj.write(f"{int(e)}\n")


def load_report(fileobj) -> DiscrepancyReport:
    fps = DEFAULT_FPS
    errors = []
    for line in fileobj:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if line.startswith("# fps="):
                fps = float(line.split("=", 1)[1])
            continue
        errors.append(int(line))
    return DiscrepancyReport(np.asarray(errors, dtype=np.int64), fps)
