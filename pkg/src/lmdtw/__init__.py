"""Exact linear-memory dynamic time warping with baselines and benchmarking."""

from .core import (
    DEFAULT_FPS,
    AlignmentResult,
    FeatureSeries,
    InvalidInputError,
    PathValidationError,
    as_series,
    euclidean_cost,
    path_cost,
    validate_path,
)
from .oracle import TIE_DIAG_FIRST, TIE_LEFT_FIRST, dtw_full
from .brute import OptimalPathDag, dtw_brute_enumerate
from .diagonal import DiagBuffers, diag_dtw, diag_length, diag_to_grid
from .divide import LinMdtwConfig, Pivot, cells_ratio, find_pivot, linmdtw
from .approx import Window, coarsen, constrained_dtw, expand_window, fastdtw, mrmsdtw
from .metrics import (
    DiscrepancyReport,
    MemoryEstimate,
    discrepancy,
    format_bytes,
    memory_estimate,
    proportion_below,
    proportion_below_frames,
)
from .fileformat import FormatError, load_features, load_path, save_features, save_path
from .synth import random_series, synth_pair

__version__ = "0.1.0"

__all__ = [
    "AlignmentResult", "DEFAULT_FPS", "DiagBuffers", "DiscrepancyReport",
    "FeatureSeries", "FormatError", "InvalidInputError", "LinMdtwConfig",
    "MemoryEstimate", "OptimalPathDag", "PathValidationError", "Pivot",
    "TIE_DIAG_FIRST", "TIE_LEFT_FIRST", "Window", "as_series", "cells_ratio",
    "coarsen", "constrained_dtw", "diag_dtw", "diag_length", "diag_to_grid",
    "discrepancy", "dtw_brute_enumerate", "dtw_full", "euclidean_cost",
    "expand_window", "fastdtw", "find_pivot", "format_bytes", "linmdtw",
    "load_features", "load_path", "memory_estimate", "mrmsdtw", "path_cost",
    "proportion_below", "proportion_below_frames", "random_series",
    "save_features", "save_path", "synth_pair", "validate_path",
]
