"""WAV loading: PCM or float input, mono downmix, resampling to a target rate."""

from __future__ import annotations

import numpy as np
from scipy.io import wavfile
from scipy.signal import resample_poly

from .fileformat import ExtractionError

_PCM_SCALE = {
    np.dtype(np.int16): 2 ** 15,
    np.dtype(np.int32): 2 ** 31,
    np.dtype(np.uint8): None,  # offset binary, handled separately
}


def load_audio(path, target_sr: int = 22050) -> np.ndarray:
    """Mono float64 samples in [-1, 1] at ``target_sr``."""
    try:
        sr, data = wavfile.read(path)
    except FileNotFoundError:
        raise
    except Exception as exc:
        raise ExtractionError(f"unreadable audio file {path}: {exc}") from exc
    if data.size == 0:
        raise ExtractionError("audio file contains no samples")

    if data.dtype == np.uint8:
        y = (data.astype(np.float64) - 128.0) / 128.0
    elif data.dtype in _PCM_SCALE:
        y = data.astype(np.float64) / _PCM_SCALE[data.dtype]
    elif np.issubdtype(data.dtype, np.floating):
        y = data.astype(np.float64)
    else:
        raise ExtractionError(f"unsupported WAV sample format {data.dtype}")

    if y.ndim == 2:
        y = y.mean(axis=1)
    if not np.all(np.isfinite(y)):
        raise ExtractionError("audio contains non-finite samples")

    if sr != target_sr:
        from math import gcd
        g = gcd(int(sr), int(target_sr))
        y = resample_poly(y, target_sr // g, sr // g)
    if y.size == 0:
        raise ExtractionError("audio is empty after resampling")
    return y
