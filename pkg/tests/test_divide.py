import numpy as np
import pytest

from helpers import series
from lmdtw import (
    LinMdtwConfig,
    OptimalPathDag,
    cells_ratio,
    dtw_full,
    find_pivot,
    linmdtw,
    path_cost,
    validate_path,
)
from lmdtw.core import InvalidInputError
from lmdtw.synth import random_series, synth_pair


class TestFindPivot:
    def test_hand_example(self):
        piv = find_pivot(series([0, 3]), series([0, 1, 3]))
        assert piv.total_at_pivot == 1.0
        assert (piv.i, piv.j) in {(0, 0), (0, 1)}

    def test_identical_series_pivot_on_diagonal(self):
        X = series([0, 1, 2, 4, 7, 11])
        piv = find_pivot(X, X)
        assert piv.i == piv.j

    def test_total_equals_optimal_cost(self):
        for seed in range(20):
            rng = np.random.default_rng(seed)
            M, N = (int(v) for v in rng.integers(2, 60, size=2))
            if M + N - 2 < 2:
                continue
            X = random_series(M, 3, seed)
            Y = random_series(N, 3, seed + 31)
            piv = find_pivot(X, Y)
            exact = dtw_full(X, Y).cost
            # Prefix + suffix sums round differently from the sequential
            # whole-path sum, so equality holds only to the last bit or two.
            assert abs(piv.total_at_pivot - exact) <= 4 * np.spacing(exact)

    def test_pivot_on_optimal_path_tiny(self):
        for seed in range(30):
            rng = np.random.default_rng(seed + 800)
            M, N = (int(v) for v in rng.integers(2, 10, size=2))
            if M + N - 2 < 2:
                continue
            X = random_series(M, 1, seed)
            Y = random_series(N, 1, seed + 63)
            piv = find_pivot(X, Y)
            assert (piv.i, piv.j) in OptimalPathDag(X, Y).optimal_cells()

    def test_too_small_rejected(self):
        with pytest.raises(InvalidInputError):
            find_pivot(series([0]), series([1]))

    def test_pivot_tie_rules_agree_on_total(self):
        X = series([1, 1, 1, 1])
        Y = series([1, 1, 1])
        lo = find_pivot(X, Y, pivot_tie_rule="lowest")
        hi = find_pivot(X, Y, pivot_tie_rule="highest")
        assert lo.total_at_pivot == hi.total_at_pivot == 0.0


class TestLinMdtw:
    def test_toy_recursion(self):
        r = linmdtw(series([0, 3]), series([0, 1, 3]), min_dim=2)
        assert r.cost == 1.0
        assert [tuple(p) for p in r.path] == [(0, 0), (0, 1), (1, 2)]

    def test_identical_series_any_config(self):
        X = random_series(40, 3, 2)
        for md in (2, 8, 500):
            r = linmdtw(X, X, min_dim=md)
            assert r.cost == 0.0
            assert np.array_equal(r.path[:, 0], r.path[:, 1])

    def test_oracle_equivalence_medium(self):
        X = random_series(400, 8, 11)
        Y = random_series(350, 8, 12)
        exact = dtw_full(X, Y)
        r = linmdtw(X, Y, min_dim=16)
        assert r.cost == exact.cost
        assert path_cost(X, Y, r.path) == r.cost

    def test_degenerate_shapes(self):
        assert linmdtw(series([0]), series([0, 1, 3]), min_dim=2).cost == 4.0
        assert linmdtw(series([5]), series([5]), min_dim=2).cost == 0.0

    def test_path_always_validates(self):
        for seed in range(12):
            rng = np.random.default_rng(seed)
            M, N = (int(v) for v in rng.integers(1, 80, size=2))
            X = random_series(M, 2, seed)
            Y = random_series(N, 2, seed + 19)
            r = linmdtw(X, Y, min_dim=4)
            assert validate_path(r.path, M, N) == []

    def test_32bit_close(self):
        X = random_series(120, 4, 3)
        Y = random_series(140, 4, 4)
        r32 = linmdtw(X, Y, min_dim=16, precision=32)
        r64 = linmdtw(X, Y, min_dim=16, precision=64)
        assert abs(r32.cost - r64.cost) / r64.cost < 1e-4

    def test_memory_peak_bound(self):
        X = random_series(300, 2, 6)
        Y = random_series(260, 2, 7)
        r = linmdtw(X, Y, min_dim=16)
        assert 0 < r.peak_diag_values <= 6 * min(300, 260)
        assert r.peak_table_cells < 16 * 300

    def test_parallel_variants_match_sequential(self):
        X, Y = synth_pair("warped-sine", 220, seed=5, warp_strength=0.3)
        base = linmdtw(X, Y, min_dim=16)
        for cfg in (LinMdtwConfig(min_dim=16, parallel_diagonals=True),
                    LinMdtwConfig(min_dim=16, parallel_halves=True)):
            r = linmdtw(X, Y, config=cfg)
            assert r.cost == base.cost
            assert np.array_equal(r.path, base.path)

    def test_progress_monotone_and_reaches_total(self):
        X = random_series(150, 2, 8)
        Y = random_series(170, 2, 9)
        seen = []
        r = linmdtw(X, Y, min_dim=16, progress=lambda done, budget: seen.append((done, budget)))
        done = [d for d, _ in seen]
        assert done == sorted(done)
        assert seen[-1] == (r.cells_processed, 2 * 150 * 170)
        # At least one report per 1% of budget once underway.
        gaps = np.diff(done)
        assert np.all(gaps <= max(1, 2 * 150 * 170 // 100) + 6 * min(150, 170))

    def test_pivot_trace_totals_equal_cost(self):
        X = random_series(200, 3, 13)
        Y = random_series(180, 3, 14)
        r = linmdtw(X, Y, min_dim=16)
        assert len(r.pivot_trace) >= 1
        top = r.pivot_trace[0]
        assert abs(top["total_at_pivot"] - r.cost) <= 4 * np.spacing(r.cost)
        for entry in r.pivot_trace:
            i, j = entry["i"], entry["j"]
            assert any((i, j) == tuple(p) for p in r.path)

    def test_config_and_overrides_exclusive(self):
        X = random_series(10, 1, 0)
        with pytest.raises(InvalidInputError):
            linmdtw(X, X, config=LinMdtwConfig(), min_dim=4)

    def test_every_path_hits_3_consecutive_diagonals(self):
        for seed in range(10):
            M, N = 30, 26
            X = random_series(M, 2, seed)
            Y = random_series(N, 2, seed + 5)
            p = dtw_full(X, Y).path
            ks = set(int(i + j) for i, j in p)
            for k in range(M + N - 3):
                assert ks & {k, k + 1, k + 2}

    def test_cells_ratio(self):
        X = random_series(50, 2, 0)
        Y = random_series(40, 2, 1)
        r = linmdtw(X, Y, min_dim=500)  # delegated straight to the oracle
        assert cells_ratio(r, 50, 40) == 1.0
