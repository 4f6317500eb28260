import numpy as np

from lmdtw import FeatureSeries


def series(values, fps=100.0) -> FeatureSeries:
    """1-D FeatureSeries from a list of scalars (abs-diff cost geometry)."""
    arr = np.asarray(values, dtype=np.float32).reshape(-1, 1)
    return FeatureSeries(arr, fps)
