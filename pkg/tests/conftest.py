import pytest


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the jitted kernels once so per-test timings stay honest."""
    from lmdtw import diag_dtw, dtw_full, fastdtw
    from lmdtw.synth import random_series

    X = random_series(8, 2, 0)
    Y = random_series(7, 2, 1)
    dtw_full(X, Y)
    diag_dtw(X, Y, kstop=5)
    fastdtw(X, Y, radius=1)
