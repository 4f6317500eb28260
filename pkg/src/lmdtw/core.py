"""Shared domain types: feature series, cost functions, warping-path validation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Frame rate implied by 22050 Hz audio with a hop of 512 samples.
DEFAULT_FPS = 22050.0 / 512.0

COST_KINDS = ("euclidean",)


class InvalidInputError(ValueError):
    """Raised when arguments violate a documented precondition."""


class PathValidationError(ValueError):
    """Raised when a warping path fails validation and the caller required one."""


@dataclass(frozen=True)
class FeatureSeries:
    """An immutable time series of fixed-dimension feature vectors.

    ``frames`` has shape (length, dim) and is stored as float32; accumulation
    precision is chosen by the individual algorithms, not here.
    """

    frames: np.ndarray
    frame_rate: float = DEFAULT_FPS

    def __post_init__(self):
        arr = np.asarray(self.frames, dtype=np.float32)
        if arr.ndim == 1:
            arr = arr[:, None]
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InvalidInputError(
                f"frames must be a (length >= 1, dim >= 1) array, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise InvalidInputError("frames contain NaN or Inf")
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        object.__setattr__(self, "frames", arr)

    def __len__(self) -> int:
        return self.frames.shape[0]

    @property
    def dim(self) -> int:
        return self.frames.shape[1]

    def reversed(self) -> "FeatureSeries":
        rev = object.__new__(FeatureSeries)
        object.__setattr__(rev, "frames", self.frames[::-1])
        object.__setattr__(rev, "frame_rate", self.frame_rate)
        return rev

    def view(self, start: int, stop: int) -> "FeatureSeries":
        """Sub-series [start, stop) sharing storage with the parent."""
        if not (0 <= start < stop <= len(self)):
            raise InvalidInputError(f"bad view range [{start}, {stop}) for length {len(self)}")
        sub = object.__new__(FeatureSeries)
        object.__setattr__(sub, "frames", self.frames[start:stop])
        object.__setattr__(sub, "frame_rate", self.frame_rate)
        return sub


def as_series(values, frame_rate: float = DEFAULT_FPS) -> FeatureSeries:
    """Coerce a 1-D value list or 2-D array into a FeatureSeries."""
    if isinstance(values, FeatureSeries):
        return values
    return FeatureSeries(np.asarray(values, dtype=np.float32), frame_rate)


def check_cost_kind(cost: str) -> str:
    if cost not in COST_KINDS:
        raise InvalidInputError(f"unknown cost kind {cost!r}; supported: {COST_KINDS}")
    return cost


def euclidean_cost(u, v) -> float:
    """Euclidean distance between two feature vectors of equal dimension."""
    u = np.asarray(u, dtype=np.float64).ravel()
    v = np.asarray(v, dtype=np.float64).ravel()
    if u.shape != v.shape:
        raise InvalidInputError(f"dimension mismatch: {u.shape} vs {v.shape}")
    if not (np.all(np.isfinite(u)) and np.all(np.isfinite(v))):
        raise InvalidInputError("non-finite components")
    return float(np.sqrt(np.sum((u - v) ** 2)))


def as_path(pairs) -> np.ndarray:
    """Coerce a sequence of (i, j) tuples into a (K, 2) int64 array."""
    arr = np.asarray(list(pairs) if not isinstance(pairs, np.ndarray) else pairs, dtype=np.int64)
    if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 1:
        raise InvalidInputError(f"path must be a nonempty (K, 2) index array, got shape {arr.shape}")
    return arr


def validate_path(path, M: int, N: int) -> list[str]:
    """Check the warping-path axioms; returns a list of violations (empty = ok).

    Checks: start at (0, 0), end at (M-1, N-1), indices in range, and every
    step in {(0,1), (1,0), (1,1)}.
    """
    p = as_path(path)
    violations = []
    if tuple(p[0]) != (0, 0):
        violations.append(f"bad-start: path begins at {tuple(p[0])}, expected (0, 0)")
    if tuple(p[-1]) != (M - 1, N - 1):
        violations.append(f"bad-end: path ends at {tuple(p[-1])}, expected ({M - 1}, {N - 1})")
    if np.any(p[:, 0] < 0) or np.any(p[:, 0] >= M) or np.any(p[:, 1] < 0) or np.any(p[:, 1] >= N):
        violations.append("index-out-of-range")
    steps = np.diff(p, axis=0)
    legal = (steps[:, 0] >= 0) & (steps[:, 1] >= 0) & (steps[:, 0] <= 1) & (steps[:, 1] <= 1) \
        & ((steps[:, 0] + steps[:, 1]) >= 1)
    for k in np.flatnonzero(~legal):
        violations.append(f"illegal-step: {tuple(p[k])} -> {tuple(p[k + 1])}")
    return violations


def require_valid_path(path, M: int, N: int) -> np.ndarray:
    p = as_path(path)
    violations = validate_path(p, M, N)
    if violations:
        raise PathValidationError("; ".join(violations))
    return p


@dataclass(frozen=True)
class AlignmentResult:
    """Outcome of any alignment algorithm in this package.

    ``cost`` always equals the sequential sum of frame costs along ``path`` in
    the accumulation dtype. ``cells_processed`` counts every DP cell evaluated;
    ``cells_budget`` is the 2*M*N progress denominator used by the
    divide-and-conquer algorithm (M*N for the others). ``peak_diag_values`` is
    the largest number of accumulated+raw diagonal values retained at once by
    the wavefront engine; ``peak_table_cells`` is the largest dense DP table
    materialized (base cases and the textbook algorithm).
    """

    cost: float
    path: np.ndarray
    cells_processed: int
    cells_budget: int
    precision: str
    algorithm: str
    peak_diag_values: int = 0
    peak_table_cells: int = 0
    pivot_trace: tuple = ()
    level_stats: tuple = ()


def precision_dtype(precision) -> np.dtype:
    """Map a precision spec (32/64, "32"/"64", or a dtype) to float32/float64."""
    if precision in (32, "32", "float32", np.float32):
        return np.dtype(np.float32)
    if precision in (64, "64", "float64", np.float64):
        return np.dtype(np.float64)
    raise InvalidInputError(f"unknown precision {precision!r}")


def frame_costs(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Rowwise Euclidean distances between (K, d) arrays.

    The component sum runs strictly left to right so the result is bit-identical
    to a scalar accumulation loop in the same dtype; every DP engine in this
    package relies on that to make cross-algorithm cost comparisons exact.
    """
    D = A - B
    D = D * D
    ss = D[:, 0].copy()
    for t in range(1, D.shape[1]):
        ss += D[:, t]
    return np.sqrt(ss)


def path_cost(X: FeatureSeries, Y: FeatureSeries, path, cost: str = "euclidean",
              dtype=np.float64) -> float:
    """Sum of frame-to-frame costs along a warping path.

    Accumulates sequentially in ``dtype``, mirroring the DP recurrence order.
    """
    check_cost_kind(cost)
    X, Y = as_series(X), as_series(Y)
    p = require_valid_path(path, len(X), len(Y))
    a = X.frames[p[:, 0]].astype(dtype)
    b = Y.frames[p[:, 1]].astype(dtype)
    costs = frame_costs(a, b)
    total = np.asarray(0.0, dtype=dtype)[()]
    for c in costs:
        total = total + c
    return float(total)
