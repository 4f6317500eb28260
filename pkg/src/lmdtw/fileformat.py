"""Binary feature-matrix files and delimited warping-path files.

FeatureFile layout (little-endian): magic "LMDW", uint16 version (1),
uint32 rows, uint32 cols, float32 fps, then rows*cols float32 payload in
row-major order. PathFile is text: a header line with M, N, fps, cost and
algorithm, then one "i,j" pair per line in path order.
"""

from __future__ import annotations

import re
import struct
from pathlib import Path

import numpy as np

from .core import FeatureSeries, InvalidInputError, require_valid_path

MAGIC = b"LMDW"
VERSION = 1
_HEADER = struct.Struct("<4sHIIf")


class FormatError(ValueError):
    """Malformed feature or path file; ``offset`` is the failing byte offset."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def save_features(series: FeatureSeries, path) -> None:
    data = np.ascontiguousarray(series.frames, dtype="<f4")
    header = _HEADER.pack(MAGIC, VERSION, data.shape[0], data.shape[1],
                          np.float32(series.frame_rate))
    with open(path, "wb") as f:
        f.write(header)
        f.write(data.tobytes())


def load_features(path) -> FeatureSeries:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise FormatError("file shorter than header", len(raw))
    magic, version, rows, cols, fps = _HEADER.unpack_from(raw, 0)
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}, expected {MAGIC!r}", 0)
    if version != VERSION:
        raise FormatError(f"unsupported version {version}", 4)
    expected = rows * cols * 4
    if len(raw) - _HEADER.size != expected:
        raise FormatError(
            f"payload is {len(raw) - _HEADER.size} bytes, header implies {expected}",
            _HEADER.size,
        )
    payload = np.frombuffer(raw, dtype="<f4", offset=_HEADER.size).reshape(rows, cols)
    bad = np.flatnonzero(~np.isfinite(payload))
    if len(bad):
        raise FormatError("payload contains non-finite values",
                          _HEADER.size + int(bad[0]) * 4)
    try:
        return FeatureSeries(payload, float(fps))
    except InvalidInputError as exc:
        raise FormatError(str(exc), _HEADER.size) from exc


_PATH_HEADER = re.compile(
    r"#\s*M=(\d+)\s+N=(\d+)\s+fps=([0-9.eE+-]+)\s+cost=([0-9.eE+-]+|nan|inf)\s+algo=(\S+)"
)


def save_path(path_pairs, M: int, N: int, fps: float, cost: float, algo: str,
              path) -> None:
    p = require_valid_path(path_pairs, M, N)
    with open(path, "w") as f:
        f.write(f"# M={M} N={N} fps={fps!r} cost={cost!r} algo={algo}\n")
        for i, j in p:
            f.write(f"{i},{j}\n")


def load_path(path):
    """Returns (pairs, meta dict with M, N, fps, cost, algo); revalidates."""
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise FormatError("empty path file")
    m = _PATH_HEADER.match(lines[0])
    if not m:
        raise FormatError(f"bad path header: {lines[0]!r}")
    meta = {"M": int(m.group(1)), "N": int(m.group(2)), "fps": float(m.group(3)),
            "cost": float(m.group(4)), "algo": m.group(5)}
    pairs = []
    for ln in lines[1:]:
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        i, j = ln.split(",")
        pairs.append((int(i), int(j)))
    p = require_valid_path(pairs, meta["M"], meta["N"])
    return p, meta
