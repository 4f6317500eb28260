"""Writer for the alignment toolkit's binary feature-file format.

The format is the contract between this extractor and the alignment CLI:
magic "LMDW", uint16 version 1, uint32 rows, uint32 cols, float32 frames per
second, then rows*cols float32 values in row-major order, all little-endian.
Implemented here against that byte layout rather than by importing the
aligner, so the two packages stay coupled only through the format itself.
"""

from __future__ import annotations

import struct

import numpy as np

MAGIC = b"LMDW"
VERSION = 1
_HEADER = struct.Struct("<4sHIIf")


class ExtractionError(ValueError):
    """Unusable audio or invalid extraction configuration."""


def write_feature_file(features: np.ndarray, fps: float, path) -> None:
    data = np.ascontiguousarray(features, dtype="<f4")
    if data.ndim != 2 or data.shape[0] < 1 or data.shape[1] < 1:
        raise ExtractionError(f"features must be (frames >= 1, dim >= 1), got {data.shape}")
    if not np.all(np.isfinite(data)):
        raise ExtractionError("features contain NaN or Inf")
    header = _HEADER.pack(MAGIC, VERSION, data.shape[0], data.shape[1], np.float32(fps))
    with open(path, "wb") as f:
        f.write(header)
        f.write(data.tobytes())
