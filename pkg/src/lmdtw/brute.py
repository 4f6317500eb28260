"""Independent test oracles built on exhaustive or optimality-guided search.

Nothing here shares code with the DP engines: costs come from the public
euclidean_cost helper and the minimum is found by recursion over warping
paths, so these functions can certify the production algorithms.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .core import FeatureSeries, InvalidInputError, as_series, check_cost_kind, euclidean_cost

#: Refuse exhaustive enumeration beyond this many warping paths.
MAX_ENUMERATED_PATHS = 500_000


def count_paths(M: int, N: int) -> int:
    """Number of warping paths in an M x N grid (Delannoy number D(M-1, N-1))."""
    if M < 1 or N < 1:
        raise InvalidInputError("M, N must be >= 1")
    row = [1] * N
    for _ in range(1, M):
        new = [1] * N
        for j in range(1, N):
            new[j] = new[j - 1] + row[j] + row[j - 1]
        row = new
    return row[-1]


def enumerate_all_paths(M: int, N: int, max_paths: int = MAX_ENUMERATED_PATHS):
    """Yield every warping path of an M x N grid as a tuple of (i, j) pairs."""
    if count_paths(M, N) > max_paths:
        raise InvalidInputError(
            f"{M}x{N} grid has more than {max_paths} warping paths; refusing to enumerate"
        )

    def walk(i, j, prefix):
        if i == M - 1 and j == N - 1:
            yield tuple(prefix)
            return
        for di, dj in ((1, 1), (1, 0), (0, 1)):
            ni, nj = i + di, j + dj
            if ni < M and nj < N:
                prefix.append((ni, nj))
                yield from walk(ni, nj, prefix)
                prefix.pop()

    yield from walk(0, 0, [(0, 0)])


def dtw_brute_enumerate(X, Y, cost: str = "euclidean",
                        max_paths: int = MAX_ENUMERATED_PATHS):
    """Minimum cost and the set of all optimal paths, by full enumeration.

    Sums costs sequentially along each candidate path, exactly as the DP
    recurrence does, so the minimum is bit-comparable with the engines'
    results. Refuses grids with more than ``max_paths`` warping paths.
    """
    check_cost_kind(cost)
    X, Y = as_series(X), as_series(Y)
    M, N = len(X), len(Y)
    C = _cost_lookup(X, Y)
    best = None
    optimal = set()
    for path in enumerate_all_paths(M, N, max_paths):
        total = 0.0
        for i, j in path:
            total = total + C[i, j]
        if best is None or total < best:
            best = total
            optimal = {path}
        elif total == best:
            optimal.add(path)
    return best, optimal


def _cost_lookup(X: FeatureSeries, Y: FeatureSeries) -> np.ndarray:
    M, N = len(X), len(Y)
    C = np.empty((M, N), dtype=np.float64)
    for i in range(M):
        for j in range(N):
            C[i, j] = euclidean_cost(X.frames[i], Y.frames[j])
    return C


class OptimalPathDag:
    """Optimal-path structure from top-down recursion on the cost-to-reach.

    ``f(i, j)`` is computed by memoized recursion (not by table fill), and an
    edge pred -> (i, j) is optimal when f(i, j) == f(pred) + C(i, j) exactly.
    Every source-to-sink path in that edge set is an optimal warping path and
    vice versa, which gives cost checks, membership checks, and enumeration of
    the optimal set without materializing all paths.
    """

    def __init__(self, X, Y, cost: str = "euclidean"):
        check_cost_kind(cost)
        X, Y = as_series(X), as_series(Y)
        self.M, self.N = len(X), len(Y)
        self.C = _cost_lookup(X, Y)

        @lru_cache(maxsize=None)
        def f(i, j):
            if i == 0 and j == 0:
                return self.C[0, 0]
            preds = []
            if j > 0:
                preds.append(f(i, j - 1))
            if i > 0:
                preds.append(f(i - 1, j))
            if i > 0 and j > 0:
                preds.append(f(i - 1, j - 1))
            return min(preds) + self.C[i, j]

        self._f = f

    @property
    def min_cost(self) -> float:
        return self._f(self.M - 1, self.N - 1)

    def _optimal_preds(self, i, j):
        # Compare f(pred) + C against f(i, j) with the same addition used to
        # build f; solving for f(pred) by subtraction rounds differently and
        # can miss genuinely tight edges.
        f = self._f
        target = f(i, j)
        out = []
        for pi, pj in ((i, j - 1), (i - 1, j), (i - 1, j - 1)):
            if pi >= 0 and pj >= 0 and f(pi, pj) + self.C[i, j] == target:
                out.append((pi, pj))
        return out

    def optimal_cells(self) -> set:
        """Cells lying on at least one optimal warping path."""
        # Backward-reach the DAG from the sink; forward reachability from the
        # source is automatic because optimal predecessors always exist.
        seen = {(self.M - 1, self.N - 1)}
        stack = [(self.M - 1, self.N - 1)]
        while stack:
            i, j = stack.pop()
            if (i, j) == (0, 0):
                continue
            for p in self._optimal_preds(i, j):
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return seen

    def enumerate_optimal_paths(self, max_paths: int = MAX_ENUMERATED_PATHS):
        """All optimal warping paths, via DFS along optimal edges only."""
        results = []

        def walk(i, j, suffix):
            if len(results) >= max_paths:
                raise InvalidInputError(f"more than {max_paths} optimal paths")
            if (i, j) == (0, 0):
                results.append(tuple(reversed(suffix)))
                return
            for pi, pj in self._optimal_preds(i, j):
                suffix.append((pi, pj))
                walk(pi, pj, suffix)
                suffix.pop()

        walk(self.M - 1, self.N - 1, [(self.M - 1, self.N - 1)])
        return set(results)
